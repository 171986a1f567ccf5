#pragma once

// From a PSD Gram matrix to an explicit sum-of-squares witness: ten
// quadratics q_1..q_10 with triangular support over the quadratic basis
// (q_k uses only u_k..u_10), obtained by an unpivoted outer-product
// Cholesky factorization in the fixed basis order.  Verification expands
// sum q_k^2 back to quartic coefficients through the polynomial product
// route, which shares no code with the Gram constraint tables.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "hankel_sos/errors.hpp"
#include "hankel_sos/generating.hpp"
#include "hankel_sos/gram.hpp"
#include "hankel_sos/linalg.hpp"
#include "hankel_sos/monomials.hpp"
#include "hankel_sos/rng.hpp"

namespace hankel_sos {

struct SosCertificate {
    // q[k][j] = coefficient of u_{j+1} in q_{k+1}; rows with k > j stay zero
    std::array<QuadVec, kGramDim> q{};

    // Packed triangular alpha_{kj} (k <= j), row-major; same layout as the
    // Gram constraint evaluation expects.
    std::array<double, kTriCount> alpha_flat() const {
        std::array<double, kTriCount> a{};
        for (int k = 0; k < kGramDim; ++k)
            for (int j = k; j < kGramDim; ++j) a[tri_index(k, j)] = q[k][j];
        return a;
    }

    static SosCertificate from_alpha_flat(const std::array<double, kTriCount>& a) {
        SosCertificate c;
        for (int k = 0; k < kGramDim; ++k)
            for (int j = k; j < kGramDim; ++j) c.q[k][j] = a[tri_index(k, j)];
        return c;
    }

    int rank() const {
        int r = 0;
        for (const auto& row : q) {
            for (double x : row)
                if (x != 0.0) {
                    ++r;
                    break;
                }
        }
        return r;
    }

    double evaluate_sum_squares(const Vec4& x) const {
        const auto u = basis_values(x);
        double s = 0.0;
        for (const auto& row : q) {
            double qk = 0.0;
            for (int j = 0; j < kGramDim; ++j) qk += row[j] * u[j];
            s += qk * qk;
        }
        return s;
    }

    // The Gram matrix this certificate realizes, sum of alpha-row outer
    // products.
    GramMatrix gram() const {
        GramMatrix g;
        for (int i = 0; i < kGramDim; ++i)
            for (int j = i; j < kGramDim; ++j) {
                double s = 0.0;
                for (int k = 0; k <= i; ++k) s += q[k][i] * q[k][j];
                g.at(i, j) = s;
            }
        return g;
    }
};

// Outer-product Cholesky in the fixed basis order.  A pivot below tol
// zeroes its whole row of the certificate (rank deficiency); a pivot
// below -tol, or lambda_min(C) < -tol, is a hard error.  Negative tol
// selects the default 1e-10 * (1 + max diagonal).
inline SosCertificate cholesky_extract(const GramMatrix& c, double tol = -1.0) {
    double maxdiag = 0.0;
    for (int i = 0; i < kGramDim; ++i) maxdiag = std::max(maxdiag, c(i, i));
    const double t = tol < 0.0 ? 1e-10 * (1.0 + maxdiag) : tol;

    const auto e = eig_sym(c.to_dense());
    if (e.values[0] < -t)
        throw NotPsdError("cholesky_extract: lambda_min = " + std::to_string(e.values[0]) +
                          " below -" + std::to_string(t));

    Mat<kGramDim> l{};
    for (int k = 0; k < kGramDim; ++k) {
        double d = c(k, k);
        for (int m = 0; m < k; ++m) d -= l(k, m) * l(k, m);
        if (d < -t)
            throw NotPsdError("cholesky_extract: pivot " + std::to_string(d) + " at step " +
                              std::to_string(k) + " below -" + std::to_string(t));
        if (d < t) continue;  // row skipped; alpha_{k,*} stays zero
        l(k, k) = std::sqrt(d);
        for (int i = k + 1; i < kGramDim; ++i) {
            double s = c(i, k);
            for (int m = 0; m < k; ++m) s -= l(i, m) * l(k, m);
            l(i, k) = s / l(k, k);
        }
    }

    SosCertificate cert;
    for (int k = 0; k < kGramDim; ++k)
        for (int j = k; j < kGramDim; ++j) cert.q[k][j] = l(j, k);
    return cert;
}

struct VerifyReport {
    double max_coeff_residual = 0.0;  // absolute, max over the 35 coefficients
    double max_point_residual = 0.0;  // absolute, max over the sample points
    double coeff_scale = 1.0;         // 1 + sup-norm of the target coefficients
    bool pass = false;                // max_coeff_residual <= tol * coeff_scale
};

namespace detail {
inline constexpr std::uint64_t kVerifyPointSeed = 987654321123ULL;
}

// Coefficient-wise comparison of sum q_k^2 against the Hankel quartic at
// the stated v0, plus evaluation at 100 fixed pseudo-random points.  Pass
// is decided on the coefficient residual alone, measured relative to the
// magnitude of the target coefficients so that instances with large v0
// are judged by the same yardstick as unit-scale ones.
inline VerifyReport verify_certificate(const GeneratingVector& g, double v0,
                                       const SosCertificate& cert, double tol = 1e-7) {
    const GeneratingVector gv = g.with_v0(v0);
    const QuarticPoly target = quartic_from_generating(gv);

    QuarticPoly sum{};
    for (const auto& row : cert.q) {
        const auto sq = multiply_quadratics(row, row);
        for (int m = 0; m < kQuarticCount; ++m) sum[m] += sq[m];
    }

    VerifyReport rep;
    for (int m = 0; m < kQuarticCount; ++m) {
        rep.max_coeff_residual = std::max(rep.max_coeff_residual, std::abs(sum[m] - target[m]));
        rep.coeff_scale = std::max(rep.coeff_scale, 1.0 + std::abs(target[m]));
    }

    Rng rng(detail::kVerifyPointSeed);
    for (int i = 0; i < 100; ++i) {
        Vec4 x;
        for (double& c : x) c = rng.normal();
        const double lhs = cert.evaluate_sum_squares(x);
        const double rhs = evaluate(target, x);
        rep.max_point_residual = std::max(rep.max_point_residual, std::abs(lhs - rhs));
    }

    rep.pass = rep.max_coeff_residual <= tol * rep.coeff_scale;
    return rep;
}

// The 35 constraint-table residuals at this certificate; the second
// verification route.
inline std::array<double, kQuarticCount> constraint_table_residual(const SosCertificate& cert,
                                                                   const GeneratingVector& g) {
    return constraint_table_residual_alpha(cert.alpha_flat(), g.values());
}

}  // namespace hankel_sos
