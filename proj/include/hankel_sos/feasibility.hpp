#pragma once

// Certificate search as an alternating-projection problem: find a point in
// the intersection of the PSD cone (10x10 Gram matrices) with the affine
// subspace pinning u^T C u to the coefficients of the Hankel quartic.
// Dykstra's correction terms make the iteration converge to the nearest
// point of the intersection rather than cycling.
//
// The solver never proves infeasibility; when it cannot reach the affine
// subspace from the PSD cone it reports Undecided and leaves the verdict
// to the caller.
//
// Instances are normalized to unit sup-norm before iterating, so feas_tol
// acts relative to the coefficient magnitude; the returned Gram matrix is
// rescaled back to the caller's units.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "hankel_sos/generating.hpp"
#include "hankel_sos/gram.hpp"
#include "hankel_sos/linalg.hpp"

namespace hankel_sos {

struct SolverOptions {
    double feas_tol = 1e-9;       // max affine violation accepted as a certificate
    int max_iters = 50000;
    int stagnation_window = 500;  // iterations without relative progress before a restart
    double stagnation_rel = 1e-14;
    // A stagnation plateau triggers a correction reset, not an immediate
    // exit: plateaus caused by stale correction terms break on reset and
    // progress resumes (observed 30-300x residual drops).  A plateau that
    // resets fail to dent is the gap of an infeasible instance; after
    // fruitless_restart_limit resets without a 2x improvement the solve
    // gives up.
    int fruitless_restart_limit = 3;
    // Unconditionally drop the correction terms this often.  Near-tangent
    // instances converge like 1/k with stale corrections; periodic resets
    // measurably tighten the constant.  0 disables.
    int restart_period = 5000;
    std::optional<GramMatrix> warm_start;  // initial iterate; zero matrix if absent
};

enum class FeasStatus { Feasible, Undecided };

inline const char* to_string(FeasStatus s) {
    return s == FeasStatus::Feasible ? "feasible" : "undecided";
}

struct FeasibilityReport {
    FeasStatus status = FeasStatus::Undecided;
    GramMatrix gram;               // PSD by construction (last cone projection)
    double affine_residual = 0.0;  // max |A vec(gram) - b| on the normalized instance
    double psd_violation = 0.0;    // max(0, -lambda_min(gram)), same normalization
    int iterations = 0;
    double scale = 1.0;  // sup-norm of the target coefficients (>= 1) divided out
                         // before iterating; multiply residuals by it for raw units
};

using TriVec = std::array<double, kTriCount>;

// Projection onto {A c = b} in the Frobenius metric of the underlying
// symmetric matrices.  On packed coordinates that metric is diagonal
// (weight 2 off the diagonal), so the projection is c + W A^T lambda with
// (A W A^T) lambda = b - A c and W = inverse metric.  The normal matrix is
// factored once.
class AffineProjector {
  public:
    explicit AffineProjector(const ConstraintSystem& cs) : cs_(cs), chol_(normal_matrix(cs)) {}

    double residual(const TriVec& c) const {
        double r = 0.0;
        for (int m = 0; m < kQuarticCount; ++m) r = std::max(r, std::abs(row_dot(m, c) - cs_.b[m]));
        return r;
    }

    TriVec project(const TriVec& c) const {
        std::array<double, kQuarticCount> rhs{};
        for (int m = 0; m < kQuarticCount; ++m) rhs[m] = cs_.b[m] - row_dot(m, c);
        const auto lambda = chol_.solve(rhs);
        TriVec out = c;
        for (int m = 0; m < kQuarticCount; ++m)
            for (int t = 0; t < kTriCount; ++t)
                if (cs_.A[m][t] != 0.0) out[t] += weight(t) * cs_.A[m][t] * lambda[m];
        return out;
    }

    static double weight(int t) {
        const auto pos = tri_position(t);
        return pos[0] == pos[1] ? 1.0 : 0.5;
    }

  private:
    double row_dot(int m, const TriVec& c) const {
        double s = 0.0;
        for (int t = 0; t < kTriCount; ++t) s += cs_.A[m][t] * c[t];
        return s;
    }

    static Mat<kQuarticCount> normal_matrix(const ConstraintSystem& cs) {
        Mat<kQuarticCount> g;
        for (int m = 0; m < kQuarticCount; ++m)
            for (int n = m; n < kQuarticCount; ++n) {
                double s = 0.0;
                for (int t = 0; t < kTriCount; ++t) s += cs.A[m][t] * weight(t) * cs.A[n][t];
                g(m, n) = s;
                g(n, m) = s;
            }
        return g;
    }

    ConstraintSystem cs_;
    CholeskyFactor<kQuarticCount> chol_;
};

// Certificate for the same generating data with v0 shifted by delta: only
// the two Gram entries that carry v0 verbatim move.  Positive semidefinite
// input stays positive semidefinite whenever delta >= 0.
inline GramMatrix transport_v0(const GramMatrix& c, double delta) {
    GramMatrix out = c;
    out.at(0, 0) += delta;
    out.at(3, 3) += delta;
    return out;
}

// One-shot Frobenius projection onto the constraint subspace.
inline GramMatrix project_affine(const GramMatrix& c, const ConstraintSystem& cs) {
    return GramMatrix(AffineProjector(cs).project(c.tri()));
}

namespace detail {

inline TriVec project_psd_tri(const TriVec& c) {
    return GramMatrix::from_dense(project_psd(GramMatrix(c).to_dense())).tri();
}

inline double psd_violation_of(const TriVec& c) {
    const auto e = eig_sym(GramMatrix(c).to_dense());
    return std::max(0.0, -e.values[0]);
}

inline TriVec rescaled(TriVec c, double scale) {
    for (double& t : c) t *= scale;
    return c;
}

}  // namespace detail

inline FeasibilityReport solve_feasibility(const GeneratingVector& g,
                                           const SolverOptions& opts = {}) {
    ConstraintSystem cs = build_constraints(g);
    FeasibilityReport rep;

    // Normalize the target to unit sup-norm so feas_tol measures violation
    // relative to the problem's magnitude.  Without this, instances whose
    // coefficients are large (v0 grows past 1e6 during the critical-value
    // doubling phase) could never meet a fixed absolute tolerance in double
    // precision.  The constraint matrix A is unaffected; only b scales.
    double scale = 1.0;
    for (double b : cs.b) scale = std::max(scale, std::abs(b));
    rep.scale = scale;

    // A PSD Gram matrix pins its (1,1) and (10,10) entries to v0 and v12;
    // a negative target there rules out every candidate without iterating.
    if (cs.b.front() < 0.0 || cs.b.back() < 0.0) {
        double r = 0.0;
        for (double b : cs.b) r = std::max(r, std::abs(b));
        rep.affine_residual = r / scale;
        return rep;
    }

    for (double& b : cs.b) b /= scale;
    const AffineProjector proj(cs);

    // cold start at the affine projection of the zero matrix
    TriVec x;
    if (opts.warm_start) {
        x = opts.warm_start->tri();
        for (double& t : x) t /= scale;
    } else {
        x = proj.project(TriVec{});
    }
    TriVec p{}, q{}, last_y = x;

    double best = std::numeric_limits<double>::infinity();
    double best_at_fire = std::numeric_limits<double>::infinity();
    int since_best = 0;
    int window = opts.stagnation_window;
    int fruitless = 0;
    int since_restart = 0;

    // An instance with no feasible point leaves the iteration drifting
    // toward a positive gap, shrinking the residual by a fraction of a
    // percent per window: enough "progress" to defeat the stagnation test
    // forever.  Every kForecastPeriod iterations, extrapolate the current
    // decay rate; once even a kForecastSlack-times-optimistic forecast
    // overshoots the remaining budget kForecastStrikes times in a row,
    // finishing within budget is impossible and the solve gives up.
    constexpr int kForecastPeriod = 2000;
    constexpr double kForecastSlack = 4.0;
    constexpr int kForecastStrikes = 3;
    double best_at_forecast = std::numeric_limits<double>::infinity();
    int strikes = 0;

    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        rep.iterations = iter;

        TriVec z;
        for (int t = 0; t < kTriCount; ++t) z[t] = x[t] + p[t];
        const TriVec y = detail::project_psd_tri(z);
        for (int t = 0; t < kTriCount; ++t) p[t] = z[t] - y[t];
        last_y = y;

        const double res = proj.residual(y);
        if (res <= opts.feas_tol) {
            const double viol = detail::psd_violation_of(y);
            if (viol <= opts.feas_tol) {
                rep.status = FeasStatus::Feasible;
                rep.gram = GramMatrix(detail::rescaled(y, scale));
                rep.affine_residual = res;
                rep.psd_violation = viol;
                return rep;
            }
        }

        TriVec w;
        for (int t = 0; t < kTriCount; ++t) w[t] = y[t] + q[t];
        const TriVec xn = proj.project(w);
        for (int t = 0; t < kTriCount; ++t) q[t] = w[t] - xn[t];

        double gap = 0.0;
        for (int t = 0; t < kTriCount; ++t) gap = std::max(gap, std::abs(xn[t] - y[t]));
        const double combined = std::max(res, gap);
        ++since_restart;
        if (combined < best * (1.0 - opts.stagnation_rel)) {
            best = combined;
            since_best = 0;
        } else if (++since_best >= window) {
            // A plateau caused by stale correction terms locking the
            // iteration onto a spurious fixed point breaks when the terms
            // are dropped; a plateau at the gap of an infeasible instance
            // does not.  Track whether restarts still pay off and give up
            // once they stop halving the stall level.
            if (best < 0.5 * best_at_fire) {
                fruitless = 0;
            } else if (++fruitless >= opts.fruitless_restart_limit) {
                x = xn;
                break;
            }
            best_at_fire = best;
            p.fill(0.0);
            q.fill(0.0);
            since_best = 0;
            since_restart = 0;
            // The window doubles so repeated restarts cannot dominate the
            // budget.  Forecast history predates the reset, so drop it.
            window = std::min(window * 2, opts.max_iters);
            best_at_forecast = std::numeric_limits<double>::infinity();
            strikes = 0;
        } else if (opts.restart_period > 0 && since_restart >= opts.restart_period) {
            p.fill(0.0);
            q.fill(0.0);
            since_restart = 0;
        }

        if (iter % kForecastPeriod == 0) {
            if (best_at_forecast < std::numeric_limits<double>::infinity()) {
                const double factor_needed = best / opts.feas_tol;
                bool strike;
                if (factor_needed <= 1.0 || best_at_forecast <= best * (1.0 + 1e-12)) {
                    strike = factor_needed > 1.0;  // no progress at all this period
                } else {
                    const double rate = std::log(best_at_forecast / best);
                    strike = kForecastPeriod * std::log(factor_needed) >
                             kForecastSlack * rate * double(opts.max_iters - iter);
                }
                if (!strike) {
                    strikes = 0;
                } else if (++strikes >= kForecastStrikes) {
                    x = xn;
                    break;
                }
            }
            best_at_forecast = best;
        }
        x = xn;
    }

    rep.status = FeasStatus::Undecided;
    rep.gram = GramMatrix(detail::rescaled(last_y, scale));
    rep.affine_residual = proj.residual(last_y);
    rep.psd_violation = detail::psd_violation_of(last_y);
    return rep;
}

}  // namespace hankel_sos
