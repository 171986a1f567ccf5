#pragma once

// The symmetric generating vector v0..v12 of a fourth order, four
// dimensional Hankel tensor (A_{ijkl} = v_{i+j+k+l-4}, indices 1..4),
// and the quartic form f it generates.  Only the symmetric, normalized
// family is supported: v_k = v_{12-k} and v4 = 1.

#include <array>
#include <cmath>
#include <string>

#include "hankel_sos/errors.hpp"
#include "hankel_sos/monomials.hpp"

namespace hankel_sos {

inline constexpr int kGeneratingLen = 13;

class GeneratingVector {
  public:
    // Builds from the seven free values v0..v6; the tail v7..v12 is the
    // mirror image.  v4 must be exactly 1.
    static GeneratingVector from_free(const std::array<double, 7>& free_vals) {
        if (free_vals[4] != 1.0)
            throw InvalidInputError("GeneratingVector: v4 must equal 1 exactly (got " +
                                    std::to_string(free_vals[4]) + ")");
        std::array<double, kGeneratingLen> v{};
        for (int k = 0; k <= 6; ++k) {
            v[k] = free_vals[k];
            v[12 - k] = free_vals[k];
        }
        return GeneratingVector(v);
    }

    // v4 = 1 implied; flags and files pass the free values in numeric order.
    static GeneratingVector from_params(double v0, double v1, double v2, double v3, double v5,
                                        double v6) {
        return from_free({v0, v1, v2, v3, 1.0, v5, v6});
    }

    // Validates a full 13-vector: v_k == v_{12-k} and v4 == 1, both exact.
    // No implicit rescaling; a caller wanting v4 = 1 must divide first.
    static GeneratingVector from_full(const std::array<double, kGeneratingLen>& v) {
        if (v[4] != 1.0)
            throw InvalidInputError("GeneratingVector: v4 must equal 1 exactly (got " +
                                    std::to_string(v[4]) + ")");
        for (int k = 0; k < 6; ++k)
            if (v[k] != v[12 - k])
                throw InvalidInputError("GeneratingVector: symmetry v" + std::to_string(k) +
                                        " == v" + std::to_string(12 - k) + " violated");
        return GeneratingVector(v);
    }

    double operator[](int k) const { return v_[k]; }
    const std::array<double, kGeneratingLen>& values() const { return v_; }

    // Same tail parameters, different leading value (v0 and its mirror v12).
    GeneratingVector with_v0(double v0) const {
        std::array<double, kGeneratingLen> v = v_;
        v[0] = v0;
        v[12] = v0;
        return GeneratingVector(v);
    }

    double v0() const { return v_[0]; }

    bool operator==(const GeneratingVector& o) const { return v_ == o.v_; }

  private:
    explicit GeneratingVector(const std::array<double, kGeneratingLen>& v) : v_(v) {}
    std::array<double, kGeneratingLen> v_;
};

// Coefficient of x^a in f is multinomial(4; a) * v_{s(a)-4}.  Generic in
// the scalar so the exact integer route used by the transcription tests
// shares this code path's table, not its arithmetic.
template <typename T>
QuarticCoeffs<T> quartic_from_symbols(const std::array<T, kGeneratingLen>& v) {
    QuarticCoeffs<T> c{};
    for (int a = 0; a < kQuarticCount; ++a) c[a] = T(kMultinomial[a]) * v[kVSymbol[a]];
    return c;
}

inline QuarticPoly quartic_from_generating(const GeneratingVector& g) {
    return quartic_from_symbols<double>(g.values());
}

// grad f(x) from the dense coefficient form.
inline Vec4 gradient(const QuarticPoly& c, const Vec4& x) {
    Vec4 grad{};
    for (int a = 0; a < kQuarticCount; ++a) {
        const Exponent& e = kQuarticExponents[a];
        for (int i = 0; i < kNumVars; ++i) {
            if (e[i] == 0) continue;
            double term = c[a] * e[i];
            for (int c2 = 0; c2 < kNumVars; ++c2) {
                int p = e[c2] - (c2 == i ? 1 : 0);
                for (int k = 0; k < p; ++k) term *= x[c2];
            }
            grad[i] += term;
        }
    }
    return grad;
}

// grad f(x); component i is 4 * sum_{jkl} A_{ijkl} x_j x_k x_l.
inline Vec4 gradient(const GeneratingVector& g, const Vec4& x) {
    return gradient(quartic_from_generating(g), x);
}

// The tensor view A_{ijkl} = v_{i+j+k+l-4}.  Materialized only for
// brute-force contraction in tests; production paths use QuarticPoly.
class HankelTensor {
  public:
    explicit HankelTensor(const GeneratingVector& g) : g_(g) {}

    // 0-based indices.
    double entry(int i, int j, int k, int l) const { return g_[i + j + k + l]; }

    const GeneratingVector& generating() const { return g_; }

  private:
    GeneratingVector g_;
};

}  // namespace hankel_sos
