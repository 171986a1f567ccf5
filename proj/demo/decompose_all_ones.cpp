// Walkthrough on the simplest interesting instance: the all-ones generating
// vector, whose quartic is exactly (x1 + x2 + x3 + x4)^4.  The program finds
// a PSD Gram matrix for it, turns that into an explicit list of ten
// quadratics whose squares sum to the quartic, checks the identity two ways,
// and finally brackets the least feasible leading value.

#include <cmath>
#include <cstdio>

#include "hankel_sos/hankel_sos.hpp"

using namespace hankel_sos;

namespace {

// "x1^2", "x2*x4", ... for the ten quadratic basis monomials.
void print_basis_monomial(int i) {
    bool first = true;
    for (int v = 0; v < 4; ++v) {
        for (int k = 0; k < kBasisExponents[i][v]; ++k) {
            std::printf("%sx%d", first ? "" : "*", v + 1);
            first = false;
        }
    }
}

void print_quadratic(const QuadVec& row) {
    bool first = true;
    for (int j = 0; j < kGramDim; ++j) {
        if (row[j] == 0.0) continue;
        const double c = row[j];
        if (first)
            std::printf("%.6f ", c);
        else
            std::printf("%s %.6f ", c < 0.0 ? "-" : "+", std::abs(c));
        print_basis_monomial(j);
        std::printf(" ");
        first = false;
    }
    if (first) std::printf("0");
}

}  // namespace

int main() {
    const auto g = GeneratingVector::from_params(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);

    std::printf("generating vector: v0..v12 all equal to 1\n");
    std::printf("quartic: f(x) = sum over |a| = 4 of multinomial(4; a) * x^a\n");
    std::printf("         (every antidiagonal value is 1, so f = (x1+x2+x3+x4)^4)\n\n");

    SolverOptions sopts;
    sopts.max_iters = 120000;
    const auto rep = solve_feasibility(g, sopts);
    std::printf("feasibility: %s after %d iterations, affine residual %.3e\n",
                to_string(rep.status), rep.iterations, rep.affine_residual * rep.scale);
    if (rep.status != FeasStatus::Feasible) return 1;

    const auto cert = cholesky_extract(rep.gram);
    std::printf("certificate rank: %d quadratics\n\n", cert.rank());
    for (int k = 0; k < kGramDim; ++k) {
        bool zero = true;
        for (double c : cert.q[k]) zero = zero && c == 0.0;
        if (zero) continue;
        std::printf("  q%-2d = ", k + 1);
        print_quadratic(cert.q[k]);
        std::printf("\n");
    }

    const auto ver = verify_certificate(g, 1.0, cert);
    std::printf("\ncheck sum q_k^2 = f:\n");
    std::printf("  max coefficient residual: %.3e (pass = %s)\n", ver.max_coeff_residual,
                ver.pass ? "true" : "false");
    const Vec4 x{0.3, -0.7, 0.2, 0.5};
    const double direct = evaluate(quartic_from_generating(g), x);
    std::printf("  at x = (0.3, -0.7, 0.2, 0.5): f = %.12f, sum of squares = %.12f\n", direct,
                cert.evaluate_sum_squares(x));

    const auto sm = sphere_min(g, 1.0, SphereMinOptions{});
    std::printf("\nminimum of f on the unit sphere: %.3e at (%.4f, %.4f, %.4f, %.4f)\n",
                sm.min_value, sm.argmin[0], sm.argmin[1], sm.argmin[2], sm.argmin[3]);
    std::printf("  (f = (sum x_i)^4 vanishes on the whole hyperplane x1+x2+x3+x4 = 0,\n");
    std::printf("   so the true minimum is 0 and any direction in that plane attains it)\n");

    std::printf("\nbisecting for the least feasible leading value...\n");
    const auto crit = critical_value(1.0, 1.0, 1.0, 1.0, 1.0, 1e-3);
    std::printf("  no certificate at v0 = %.9g, certificate verified at v0 = %.9g\n",
                crit.m1_lower, crit.m1_upper);
    std::printf("  (v0 = 1 is exactly critical here: below it the x1^4 and x4^4\n");
    std::printf("   coefficients are too small to carry the required Gram mass)\n");
    return 0;
}
