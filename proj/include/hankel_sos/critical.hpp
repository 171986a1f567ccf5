#pragma once

// The least v0 admitting a verified certificate, by monotone bisection
// over the feasibility solver.  Monotonicity holds because a certificate
// at v0 transports to any larger v0 (two diagonal Gram entries absorb the
// shift), so the set of certifiable v0 is an up-closed interval.
//
// Also here: projected gradient descent on the unit sphere as an
// empirical nonnegativity cross-check, and a concurrent parameter sweep
// whose output is independent of the worker count.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hankel_sos/certificate.hpp"
#include "hankel_sos/errors.hpp"
#include "hankel_sos/feasibility.hpp"
#include "hankel_sos/generating.hpp"
#include "hankel_sos/rng.hpp"

namespace hankel_sos {

struct CriticalOptions {
    // Probes differ from a standalone solve in two ways.  They get a far
    // larger iteration budget: near the critical v0 the two sets meet
    // tangentially and the projection iteration slows to ~1/k.  And their
    // accept threshold is keyed to the verification gate rather than the
    // solver default: a probe counts only if the extracted certificate
    // passes verify_certificate at verify_tol (relative to coefficient
    // size), and a normalized residual of verify_tol/5 already guarantees
    // that with margin, at any scale.  Chasing residuals far below that
    // level buys nothing and strands the search on near-tangent instances.
    CriticalOptions() {
        solver.max_iters = 500000;
        solver.feas_tol = verify_tol / 5.0;
    }

    SolverOptions solver;
    double verify_tol = 1e-7;
    // start each probe from the highest failed probe's final iterate,
    // shifted up along v0.  Upward shifts add to two diagonal entries, so
    // they preserve positive semidefiniteness and carry the previous
    // probe's small residual over; without this, probes near the critical
    // point start far away and the solver budget dominates the answer.
    bool warm_start_chain = true;
    int max_doublings = 20;
};

struct CriticalValueResult {
    double m1_lower = 0.0;  // greatest v0 probed without finding a certificate
    double m1_upper = 0.0;  // least v0 at which a certificate was found and verified
    double tol = 0.0;       // achieved bracket width
    SosCertificate certificate;  // extracted at m1_upper
    GramMatrix gram;             // solver Gram matrix behind it
};

namespace detail {

struct Probe {
    GramMatrix gram;
    SosCertificate certificate;
};

struct ProbeOutcome {
    std::optional<Probe> found;  // present iff Feasible and verified
    GramMatrix iterate;          // solver's final PSD iterate either way
    double residual = std::numeric_limits<double>::infinity();
};

// A probe succeeds only if the solver reports Feasible AND the extracted
// certificate passes coefficient verification; anything else counts as
// "no certificate found at this v0".  The final iterate is returned even
// on failure: shifted up along v0 it seeds a later probe.
inline ProbeOutcome probe_v0(const GeneratingVector& base, double v0, const CriticalOptions& opts,
                             const std::optional<GramMatrix>& warm) {
    SolverOptions sopts = opts.solver;
    sopts.warm_start = warm;
    const auto rep = solve_feasibility(base.with_v0(v0), sopts);
    ProbeOutcome out{std::nullopt, rep.gram, rep.affine_residual};
    if (rep.status != FeasStatus::Feasible) return out;
    try {
        SosCertificate cert = cholesky_extract(rep.gram);
        if (verify_certificate(base, v0, cert, opts.verify_tol).pass)
            out.found = Probe{rep.gram, std::move(cert)};
    } catch (const NumericalError&) {
    }
    return out;
}

}  // namespace detail

inline CriticalValueResult critical_value(double v1, double v2, double v3, double v5, double v6,
                                          double bisect_tol, const CriticalOptions& opts = {}) {
    if (!(bisect_tol > 0.0)) throw InvalidInputError("critical_value: bisect_tol must be positive");

    const auto base = GeneratingVector::from_params(0.0, v1, v2, v3, v5, v6);

    // closest-approach iterate of the highest failed probe so far; shifted
    // up along v0 it seeds a rescue attempt when a cold probe fails
    std::optional<GramMatrix> fail_gram;
    double fail_v0 = 0.0;
    double fail_res = std::numeric_limits<double>::infinity();
    auto warm_for = [&](double t) -> std::optional<GramMatrix> {
        if (!opts.warm_start_chain || !fail_gram || fail_v0 > t) return std::nullopt;
        return transport_v0(*fail_gram, t - fail_v0);
    };
    auto note_failure = [&](double t, detail::ProbeOutcome o) {
        if (!fail_gram || t > fail_v0 || (t == fail_v0 && o.residual < fail_res)) {
            fail_gram = std::move(o.iterate);
            fail_v0 = t;
            fail_res = o.residual;
        }
    };
    // A probe first continues from the transported failure iterate when
    // one exists: near the critical point a cold start exhausts its budget
    // while the transported iterate is already close to both sets.  A
    // fruitless warm attempt dies quickly under the solver's decay
    // forecast, so the cold fallback still runs with most of the probe
    // budget intact.
    auto attempt = [&](double t) -> std::optional<detail::Probe> {
        detail::ProbeOutcome o;
        if (auto w = warm_for(t)) {
            o = detail::probe_v0(base, t, opts, w);
            if (o.found) return std::move(o.found);
        }
        auto oc = detail::probe_v0(base, t, opts, std::nullopt);
        if (oc.found) return std::move(oc.found);
        if (oc.residual < o.residual) o = std::move(oc);
        note_failure(t, std::move(o));
        return std::nullopt;
    };

    // find a certifiable upper end, doubling from the a-priori bound
    double hi = 8.0 * (1.0 + std::abs(v1) + std::abs(v2) + std::abs(v3) + std::abs(v5) +
                       std::abs(v6));
    std::optional<detail::Probe> best;
    double best_v0 = 0.0;
    for (int d = 0;; ++d) {
        if (auto p = attempt(hi)) {
            best = std::move(p);
            best_v0 = hi;
            break;
        }
        if (d == opts.max_doublings)
            throw SearchFailureError("critical_value: no certificate found up to v0 = " +
                                     std::to_string(hi));
        hi *= 2.0;
    }

    double lo = 0.0;
    {
        // Certifiability exactly at 0 appears impossible for any valid
        // tuple (the mirror symmetry forces several coefficients that need
        // Gram mass in the rows a zero leading value wipes out), but the
        // search stays correct if it ever happens; either way the failed
        // iterate seeds the warm chain.
        auto at_zero = detail::probe_v0(base, 0.0, opts, std::nullopt);
        if (at_zero.found) {
            CriticalValueResult out;
            out.m1_lower = -bisect_tol;  // negative v0 is sign-obstructed
            out.m1_upper = 0.0;
            out.tol = bisect_tol;
            out.certificate = at_zero.found->certificate;
            out.gram = at_zero.found->gram;
            return out;
        }
        note_failure(0.0, std::move(at_zero));
    }

    hi = best_v0;
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (auto p = attempt(mid)) {
            best = std::move(p);
            best_v0 = mid;
            hi = mid;
        } else {
            lo = mid;
        }
    }

    CriticalValueResult out;
    out.m1_lower = lo;
    out.m1_upper = hi;
    out.tol = hi - lo;
    out.certificate = best->certificate;
    out.gram = best->gram;
    return out;
}

struct SphereMinOptions {
    int restarts = 64;
    std::uint64_t seed = 42;
    int max_iters = 2000;
    double armijo_c = 1e-4;
    double shrink = 0.5;
    double init_step = 1.0;
    double grad_tol = 1e-8;  // tangential gradient norm at convergence
};

struct SphereMinResult {
    double min_value = 0.0;
    Vec4 argmin{};
    int restarts_used = 0;
};

// Best local minimum of f over the unit sphere from seeded random starts;
// projected gradient descent with Armijo backtracking.  Deterministic for
// a fixed seed.
inline SphereMinResult sphere_min(const GeneratingVector& g, double v0,
                                  const SphereMinOptions& opts = {}) {
    if (opts.restarts < 1) throw InvalidInputError("sphere_min: restarts must be >= 1");
    const QuarticPoly poly = quartic_from_generating(g.with_v0(v0));

    Rng rng(opts.seed);
    SphereMinResult out;
    out.min_value = std::numeric_limits<double>::infinity();
    out.restarts_used = opts.restarts;

    for (int r = 0; r < opts.restarts; ++r) {
        Vec4 x = rng.unit4();
        double fx = evaluate(poly, x);

        for (int it = 0; it < opts.max_iters; ++it) {
            const Vec4 grad = gradient(poly, x);
            const double radial = grad[0] * x[0] + grad[1] * x[1] + grad[2] * x[2] + grad[3] * x[3];
            Vec4 tang;
            double gn2 = 0.0;
            for (int i = 0; i < 4; ++i) {
                tang[i] = grad[i] - radial * x[i];
                gn2 += tang[i] * tang[i];
            }
            if (std::sqrt(gn2) <= opts.grad_tol * (1.0 + std::abs(fx))) break;

            double step = opts.init_step;
            bool moved = false;
            while (step >= 1e-18) {
                Vec4 cand;
                double norm2 = 0.0;
                for (int i = 0; i < 4; ++i) {
                    cand[i] = x[i] - step * tang[i];
                    norm2 += cand[i] * cand[i];
                }
                const double inv = 1.0 / std::sqrt(norm2);
                for (double& c : cand) c *= inv;
                const double fc = evaluate(poly, cand);
                if (fc <= fx - opts.armijo_c * step * gn2) {
                    x = cand;
                    fx = fc;
                    moved = true;
                    break;
                }
                step *= opts.shrink;
            }
            if (!moved) break;
        }

        if (fx < out.min_value) {
            out.min_value = fx;
            out.argmin = x;
        }
    }
    return out;
}

inline SphereMinResult sphere_min(const GeneratingVector& g, double v0, int restarts,
                                  std::uint64_t seed) {
    SphereMinOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    return sphere_min(g, v0, opts);
}

struct SweepOptions {
    double bisect_tol = 1e-6;
    CriticalOptions critical;
    int restarts = 64;
    std::uint64_t base_seed = 42;
    int workers = 1;
};

struct SweepRow {
    std::array<double, 5> params{};  // v1, v2, v3, v5, v6
    double m1_lower = std::numeric_limits<double>::quiet_NaN();
    double m1_upper = std::numeric_limits<double>::quiet_NaN();
    double sphere_min = std::numeric_limits<double>::quiet_NaN();
    std::string status;  // ok | search_failure | error
    double seconds = 0.0;
};

// One critical-value computation per tuple.  Rows are independent; worker
// threads pull row indices from a shared counter, every row is seeded by
// base_seed + row_index, and results land at the row's input position, so
// the table is identical for any worker count.
inline std::vector<SweepRow> sweep(const std::vector<std::array<double, 5>>& grid,
                                   const SweepOptions& opts = {}) {
    if (grid.empty()) throw InvalidInputError("sweep: empty grid");

    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};

    auto run_row = [&](std::size_t idx) {
        const auto& p = grid[idx];
        SweepRow& row = rows[idx];
        row.params = p;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto cv =
                critical_value(p[0], p[1], p[2], p[3], p[4], opts.bisect_tol, opts.critical);
            row.m1_lower = cv.m1_lower;
            row.m1_upper = cv.m1_upper;
            const auto base = GeneratingVector::from_params(0.0, p[0], p[1], p[2], p[3], p[4]);
            row.sphere_min =
                sphere_min(base, cv.m1_upper, opts.restarts, opts.base_seed + idx).min_value;
            row.status = "ok";
        } catch (const SearchFailureError&) {
            row.status = "search_failure";
        } catch (const std::exception&) {
            row.status = "error";
        }
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(grid.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) run_row(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                    run_row(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace hankel_sos
