#pragma once

// Indexing and arithmetic for homogeneous quartics in four variables and
// for the fixed 10-element quadratic basis
//
//   u = (x1^2, x2^2, x3^2, x4^2, x1*x3, x2*x4, x1*x2, x3*x4, x2*x3, x1*x4).
//
// Quartic monomials are stored densely as 35 coefficients in canonical
// order: lexicographic descending on the exponent tuple (e1,e2,e3,e4),
// so x1^4 has index 0 and x4^4 has index 34.  The basis order above is
// load-bearing: the Gram constraint table in gram.hpp is written against
// it and must never be permuted.

#include <array>
#include <cstdint>

#include "hankel_sos/errors.hpp"

namespace hankel_sos {

inline constexpr int kNumVars = 4;
inline constexpr int kQuarticCount = 35;  // monomials of degree 4 in 4 vars
inline constexpr int kBasisSize = 10;     // quadratic basis u

using Exponent = std::array<int, kNumVars>;

template <typename T>
using QuarticCoeffs = std::array<T, kQuarticCount>;

// Dense coefficient vector of a degree-4 homogeneous polynomial.
using QuarticPoly = QuarticCoeffs<double>;

// Coefficient vector over the quadratic basis u.
template <typename T>
using QuadCoeffs = std::array<T, kBasisSize>;

using QuadVec = QuadCoeffs<double>;

using Vec4 = std::array<double, kNumVars>;

namespace detail {

constexpr std::array<Exponent, kQuarticCount> make_exponents() {
    std::array<Exponent, kQuarticCount> out{};
    int n = 0;
    for (int e1 = 4; e1 >= 0; --e1)
        for (int e2 = 4 - e1; e2 >= 0; --e2)
            for (int e3 = 4 - e1 - e2; e3 >= 0; --e3)
                out[n++] = Exponent{e1, e2, e3, 4 - e1 - e2 - e3};
    return out;
}

constexpr int pack(const Exponent& e) {
    return ((e[0] * 5 + e[1]) * 5 + e[2]) * 5 + e[3];
}

constexpr std::array<std::int8_t, 625> make_index_lut() {
    std::array<std::int8_t, 625> lut{};
    for (auto& v : lut) v = -1;
    const auto exps = make_exponents();
    for (int a = 0; a < kQuarticCount; ++a) lut[pack(exps[a])] = static_cast<std::int8_t>(a);
    return lut;
}

constexpr std::array<int, kQuarticCount> make_multinomials() {
    constexpr int fact[5] = {1, 1, 2, 6, 24};
    std::array<int, kQuarticCount> out{};
    const auto exps = make_exponents();
    for (int a = 0; a < kQuarticCount; ++a)
        out[a] = 24 / (fact[exps[a][0]] * fact[exps[a][1]] * fact[exps[a][2]] * fact[exps[a][3]]);
    return out;
}

// s(a) = sum_i i*e_i with 1-based variable weights; v-symbol of the
// monomial is v_{s(a)-4}.
constexpr std::array<int, kQuarticCount> make_vsymbols() {
    std::array<int, kQuarticCount> out{};
    const auto exps = make_exponents();
    for (int a = 0; a < kQuarticCount; ++a) {
        int s = 0;
        for (int i = 0; i < kNumVars; ++i) s += (i + 1) * exps[a][i];
        out[a] = s - 4;
    }
    return out;
}

}  // namespace detail

// Exponent tuples of the 35 quartic monomials in canonical order.
inline constexpr std::array<Exponent, kQuarticCount> kQuarticExponents = detail::make_exponents();

// multinomial(4; a) per quartic monomial (1, 4, 6, 12 or 24).
inline constexpr std::array<int, kQuarticCount> kMultinomial = detail::make_multinomials();

// v-symbol index s(a)-4 in 0..12 per quartic monomial.
inline constexpr std::array<int, kQuarticCount> kVSymbol = detail::make_vsymbols();

// The quadratic basis u in the fixed order documented above.
inline constexpr std::array<Exponent, kBasisSize> kBasisExponents = {{
    {2, 0, 0, 0},  // x1^2
    {0, 2, 0, 0},  // x2^2
    {0, 0, 2, 0},  // x3^2
    {0, 0, 0, 2},  // x4^2
    {1, 0, 1, 0},  // x1*x3
    {0, 1, 0, 1},  // x2*x4
    {1, 1, 0, 0},  // x1*x2
    {0, 0, 1, 1},  // x3*x4
    {0, 1, 1, 0},  // x2*x3
    {1, 0, 0, 1},  // x1*x4
}};

inline constexpr std::array<std::int8_t, 625> kIndexLut = detail::make_index_lut();

inline constexpr Exponent exponent_of_index(int index) { return kQuarticExponents[index]; }

// Canonical index of a quartic exponent tuple.  Throws InvalidInputError
// unless the components are non-negative and sum to 4.
inline int monomial_index(const Exponent& e) {
    for (int c : e)
        if (c < 0 || c > 4) throw InvalidInputError("monomial_index: exponent component out of range");
    if (e[0] + e[1] + e[2] + e[3] != 4)
        throw InvalidInputError("monomial_index: exponent components must sum to 4");
    return kIndexLut[detail::pack(e)];
}

namespace detail {

// u_i * u_j is a single quartic monomial; kPairMonomial[i][j] is its index.
constexpr std::array<std::array<std::int8_t, kBasisSize>, kBasisSize> make_pair_monomial() {
    std::array<std::array<std::int8_t, kBasisSize>, kBasisSize> out{};
    const auto lut = make_index_lut();
    for (int i = 0; i < kBasisSize; ++i)
        for (int j = 0; j < kBasisSize; ++j) {
            Exponent e{};
            for (int c = 0; c < kNumVars; ++c) e[c] = kBasisExponents[i][c] + kBasisExponents[j][c];
            out[i][j] = lut[pack(e)];
        }
    return out;
}

}  // namespace detail

inline constexpr auto kPairMonomial = detail::make_pair_monomial();

// Unordered basis pairs {i,j} (i <= j) producing a given quartic monomial,
// derived from kPairMonomial.  At most three pairs exist (x1*x2*x3*x4).
struct BasisPair {
    std::int8_t i, j;  // 0-based, i <= j
};

struct BasisPairList {
    int count = 0;
    std::array<BasisPair, 3> pairs{};
};

namespace detail {

constexpr std::array<BasisPairList, kQuarticCount> make_monomial_pairs() {
    std::array<BasisPairList, kQuarticCount> out{};
    const auto pm = make_pair_monomial();
    for (int i = 0; i < kBasisSize; ++i)
        for (int j = i; j < kBasisSize; ++j) {
            auto& lst = out[pm[i][j]];
            lst.pairs[lst.count++] = BasisPair{static_cast<std::int8_t>(i), static_cast<std::int8_t>(j)};
        }
    return out;
}

}  // namespace detail

inline constexpr std::array<BasisPairList, kQuarticCount> kMonomialPairs = detail::make_monomial_pairs();

// x^a for one monomial.
inline double monomial_value(int index, const Vec4& x) {
    const Exponent& e = kQuarticExponents[index];
    double r = 1.0;
    for (int i = 0; i < kNumVars; ++i)
        for (int k = 0; k < e[i]; ++k) r *= x[i];
    return r;
}

// p(x) = sum_a coeffs[a] * x^a.
inline double evaluate(const QuarticPoly& p, const Vec4& x) {
    double r = 0.0;
    for (int a = 0; a < kQuarticCount; ++a) r += p[a] * monomial_value(a, x);
    return r;
}

// Values of the quadratic basis at x.
inline QuadVec basis_values(const Vec4& x) {
    QuadVec u{};
    for (int i = 0; i < kBasisSize; ++i) {
        double r = 1.0;
        for (int c = 0; c < kNumVars; ++c)
            for (int k = 0; k < kBasisExponents[i][c]; ++k) r *= x[c];
        u[i] = r;
    }
    return u;
}

// (a . u)(x)
inline double evaluate_quadratic(const QuadVec& a, const Vec4& x) {
    const QuadVec u = basis_values(x);
    double r = 0.0;
    for (int i = 0; i < kBasisSize; ++i) r += a[i] * u[i];
    return r;
}

// Coefficient vector of (a.u)(b.u).  The i<=j accumulation keeps the
// result exactly symmetric in (a, b).
template <typename T>
QuarticCoeffs<T> multiply_quadratics(const QuadCoeffs<T>& a, const QuadCoeffs<T>& b) {
    QuarticCoeffs<T> out{};
    for (int i = 0; i < kBasisSize; ++i) {
        out[kPairMonomial[i][i]] += a[i] * b[i];
        for (int j = i + 1; j < kBasisSize; ++j)
            out[kPairMonomial[i][j]] += a[i] * b[j] + a[j] * b[i];
    }
    return out;
}

}  // namespace hankel_sos
