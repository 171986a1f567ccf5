#pragma once

// Dense symmetric linear algebra at sizes <= 55, deterministic by
// construction: cyclic Jacobi eigendecomposition (fixed sweep order),
// eigenvalue-clamping PSD projection, and unpivoted Cholesky for SPD
// solves.  No BLAS ambitions; every matrix here is tiny.

#include <array>
#include <cmath>
#include <string>

#include "hankel_sos/errors.hpp"

namespace hankel_sos {

template <int N>
struct Mat {
    std::array<double, static_cast<std::size_t>(N) * N> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * N + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * N + j]; }

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (double x : a) s += x * x;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : a) m = std::max(m, std::abs(x));
        return m;
    }

    bool operator==(const Mat& o) const { return a == o.a; }
};

template <int N>
Mat<N> operator-(const Mat<N>& x, const Mat<N>& y) {
    Mat<N> r;
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
}

template <int N>
Mat<N> operator+(const Mat<N>& x, const Mat<N>& y) {
    Mat<N> r;
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
}

template <int N>
std::array<double, static_cast<std::size_t>(N)> matvec(
    const Mat<N>& m, const std::array<double, static_cast<std::size_t>(N)>& v) {
    std::array<double, static_cast<std::size_t>(N)> r{};
    for (int i = 0; i < N; ++i) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

struct JacobiOptions {
    double off_tol = 1e-13;  // on the off-diagonal norm, scaled by max(1, ||M||_F)
    int max_sweeps = 100;
};

// Eigenvalues ascending; eigenvectors are the matching orthonormal columns.
template <int N>
struct SymEig {
    std::array<double, N> values{};
    Mat<N> vectors;

    Mat<N> reconstruct() const {
        Mat<N> r;
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) {
                double s = 0.0;
                for (int k = 0; k < N; ++k) s += vectors(i, k) * values[k] * vectors(j, k);
                r(i, j) = s;
                r(j, i) = s;
            }
        return r;
    }
};

namespace detail {

template <int N>
double off_diag_norm(const Mat<N>& m) {
    double s = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) s += 2.0 * m(i, j) * m(i, j);
    return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi with fixed (p,q) sweep order.  Throws NumericalError if the
// off-diagonal norm fails to drop below tolerance within max_sweeps.
template <int N>
SymEig<N> eig_sym(Mat<N> m, const JacobiOptions& opts = {}) {
    const double scale = std::max(1.0, m.frobenius());
    const double thresh = opts.off_tol * scale;
    const double skip = 0.01 * thresh / N;

    Mat<N> v = Mat<N>::identity();
    bool converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        if (detail::off_diag_norm(m) <= thresh) {
            converged = true;
            break;
        }
        for (int p = 0; p < N - 1; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double apq = m(p, q);
                if (std::abs(apq) <= skip) continue;
                const double app = m(p, p);
                const double aqq = m(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (int k = 0; k < N; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < N; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;

                for (int k = 0; k < N; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged && detail::off_diag_norm(m) > thresh)
        throw NumericalError("eig_sym: Jacobi sweeps did not converge");

    // ascending eigenvalue order, stable under ties for determinism
    std::array<int, N> perm{};
    for (int i = 0; i < N; ++i) perm[i] = i;
    for (int i = 1; i < N; ++i) {  // insertion sort keeps tie order stable
        int pi = perm[i];
        double key = m(pi, pi);
        int j = i - 1;
        while (j >= 0 && m(perm[j], perm[j]) > key) {
            perm[j + 1] = perm[j];
            --j;
        }
        perm[j + 1] = pi;
    }

    SymEig<N> out;
    for (int i = 0; i < N; ++i) {
        out.values[i] = m(perm[i], perm[i]);
        for (int k = 0; k < N; ++k) out.vectors(k, i) = v(k, perm[i]);
    }
    return out;
}

// Frobenius-nearest PSD matrix: negative eigenvalues clamped to zero.
// The i<=j reconstruction makes the output exactly symmetric.
template <int N>
Mat<N> project_psd(const Mat<N>& m, const JacobiOptions& opts = {}) {
    SymEig<N> e = eig_sym(m, opts);
    for (double& lam : e.values) lam = std::max(lam, 0.0);
    return e.reconstruct();
}

// Unpivoted Cholesky G = L L^T.  Factor once, solve many.
template <int N>
class CholeskyFactor {
  public:
    explicit CholeskyFactor(const Mat<N>& g, double pivot_tol = 1e-13) {
        for (int k = 0; k < N; ++k) {
            double d = g(k, k);
            for (int m = 0; m < k; ++m) d -= l_(k, m) * l_(k, m);
            if (d < pivot_tol)
                throw SingularSystemError("CholeskyFactor: pivot " + std::to_string(d) +
                                          " at step " + std::to_string(k) + " below tolerance");
            l_(k, k) = std::sqrt(d);
            for (int i = k + 1; i < N; ++i) {
                double s = g(i, k);
                for (int m = 0; m < k; ++m) s -= l_(i, m) * l_(k, m);
                l_(i, k) = s / l_(k, k);
            }
        }
    }

    std::array<double, N> solve(const std::array<double, N>& rhs) const {
        std::array<double, N> y{};
        for (int i = 0; i < N; ++i) {
            double s = rhs[i];
            for (int j = 0; j < i; ++j) s -= l_(i, j) * y[j];
            y[i] = s / l_(i, i);
        }
        std::array<double, N> x{};
        for (int i = N - 1; i >= 0; --i) {
            double s = y[i];
            for (int j = i + 1; j < N; ++j) s -= l_(j, i) * x[j];
            x[i] = s / l_(i, i);
        }
        return x;
    }

    const Mat<N>& lower() const { return l_; }

  private:
    Mat<N> l_{};
};

template <int N>
std::array<double, N> solve_spd(const Mat<N>& g, const std::array<double, N>& rhs) {
    return CholeskyFactor<N>(g).solve(rhs);
}

}  // namespace hankel_sos
