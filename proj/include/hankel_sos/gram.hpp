#pragma once

// The linear system tying a 10x10 symmetric Gram matrix C over the
// quadratic basis u to the quartic coefficients of f = u^T C u.
//
// Two independent routes to the same 35 equations live here:
//
//   1. kConstraintTable — a hand-entered table, one row per quartic
//      monomial in canonical order, listing which Gram entries feed that
//      coefficient and with which multiplicity, plus the v-symbol and
//      multinomial factor on the target side.  Entered by hand and kept
//      deliberately independent of route 2.
//   2. gram_to_quartic / build_constraints — generated from the basis
//      product table in monomials.hpp.
//
// The test suite diffs the two routes in exact integer arithmetic; they
// must agree to the last bit.

#include <array>
#include <cstdint>

#include "hankel_sos/generating.hpp"
#include "hankel_sos/linalg.hpp"
#include "hankel_sos/monomials.hpp"

namespace hankel_sos {

inline constexpr int kGramDim = 10;
inline constexpr int kTriCount = 55;  // upper-triangular entries of a 10x10

// Row-major position of (i,j), i <= j, within the packed upper triangle.
constexpr int tri_index(int i, int j) { return i * kGramDim - i * (i + 1) / 2 + j; }

// (i,j) of a packed position; inverse of tri_index.
constexpr std::array<int, 2> tri_position(int t) {
    int i = 0;
    while (tri_index(i, kGramDim - 1) < t) ++i;
    return {i, t - tri_index(i, i) + i};
}

// Symmetric 10x10 matrix stored as its 55 upper-triangular entries.
class GramMatrix {
  public:
    GramMatrix() = default;

    explicit GramMatrix(const std::array<double, kTriCount>& tri) : a_(tri) {}

    double operator()(int i, int j) const { return i <= j ? a_[tri_index(i, j)] : a_[tri_index(j, i)]; }

    double& at(int i, int j) { return i <= j ? a_[tri_index(i, j)] : a_[tri_index(j, i)]; }

    const std::array<double, kTriCount>& tri() const { return a_; }
    std::array<double, kTriCount>& tri() { return a_; }

    Mat<kGramDim> to_dense() const {
        Mat<kGramDim> m;
        for (int i = 0; i < kGramDim; ++i)
            for (int j = i; j < kGramDim; ++j) {
                m(i, j) = a_[tri_index(i, j)];
                m(j, i) = m(i, j);
            }
        return m;
    }

    // Off-diagonal asymmetry in the input is averaged away.
    static GramMatrix from_dense(const Mat<kGramDim>& m) {
        GramMatrix g;
        for (int i = 0; i < kGramDim; ++i)
            for (int j = i; j < kGramDim; ++j)
                g.a_[tri_index(i, j)] = i == j ? m(i, i) : 0.5 * (m(i, j) + m(j, i));
        return g;
    }

    // w w^T for a basis coefficient vector w.
    static GramMatrix outer(const QuadVec& w) {
        GramMatrix g;
        for (int i = 0; i < kGramDim; ++i)
            for (int j = i; j < kGramDim; ++j) g.a_[tri_index(i, j)] = w[i] * w[j];
        return g;
    }

    bool operator==(const GramMatrix& o) const { return a_ == o.a_; }

  private:
    std::array<double, kTriCount> a_{};
};

// One Gram position feeding a quartic coefficient: mult * C(i,j), with
// mult = 2 off the diagonal and 1 on it.  Positions are 1-based here to
// match the alpha_{ij} naming used everywhere this table is audited.
struct ConstraintTerm {
    std::int8_t i, j, mult;
};

struct ConstraintRow {
    Exponent mono;      // quartic exponent tuple, canonical order
    std::int8_t vsym;   // target is multinom * v_{vsym}
    std::int8_t multinom;
    std::int8_t nterms;
    std::array<ConstraintTerm, 3> terms;
};

// Hand-entered transcription of the 35 Gram equations, one per quartic
// coefficient, in canonical monomial order.  In alpha form each term
// mult*C(i,j) reads mult * sum_{k=1}^{min(i,j)} alpha_{ki} alpha_{kj}.
// Two of the published square-sum rows (x2^2*x4^2 and x3^2*x4^2) circulate
// with a spurious factor 2 on C(6,6) resp. C(8,8); the correct coefficient
// is 1, as for every other square term, and that is what this table holds.
inline constexpr std::array<ConstraintRow, kQuarticCount> kConstraintTable = {{
    {{4, 0, 0, 0}, 0, 1, 1, {{{1, 1, 1}, {}, {}}}},            // v0 = C(1,1)
    {{3, 1, 0, 0}, 1, 4, 1, {{{1, 7, 2}, {}, {}}}},            // 4v1 = 2C(1,7)
    {{3, 0, 1, 0}, 2, 4, 1, {{{1, 5, 2}, {}, {}}}},            // 4v2 = 2C(1,5)
    {{3, 0, 0, 1}, 3, 4, 1, {{{1, 10, 2}, {}, {}}}},           // 4v3 = 2C(1,10)
    {{2, 2, 0, 0}, 2, 6, 2, {{{1, 2, 2}, {7, 7, 1}, {}}}},     // 6v2 = 2C(1,2) + C(7,7)
    {{2, 1, 1, 0}, 3, 12, 2, {{{1, 9, 2}, {5, 7, 2}, {}}}},    // 12v3 = 2C(1,9) + 2C(5,7)
    {{2, 1, 0, 1}, 4, 12, 2, {{{1, 6, 2}, {7, 10, 2}, {}}}},   // 12v4 = 2C(1,6) + 2C(7,10)
    {{2, 0, 2, 0}, 4, 6, 2, {{{1, 3, 2}, {5, 5, 1}, {}}}},     // 6v4 = 2C(1,3) + C(5,5)
    {{2, 0, 1, 1}, 5, 12, 2, {{{1, 8, 2}, {5, 10, 2}, {}}}},   // 12v5 = 2C(1,8) + 2C(5,10)
    {{2, 0, 0, 2}, 6, 6, 2, {{{1, 4, 2}, {10, 10, 1}, {}}}},   // 6v6 = 2C(1,4) + C(10,10)
    {{1, 3, 0, 0}, 3, 4, 1, {{{2, 7, 2}, {}, {}}}},            // 4v3 = 2C(2,7)
    {{1, 2, 1, 0}, 4, 12, 2, {{{2, 5, 2}, {7, 9, 2}, {}}}},    // 12v4 = 2C(2,5) + 2C(7,9)
    {{1, 2, 0, 1}, 5, 12, 2, {{{2, 10, 2}, {6, 7, 2}, {}}}},   // 12v5 = 2C(2,10) + 2C(6,7)
    {{1, 1, 2, 0}, 5, 12, 2, {{{3, 7, 2}, {5, 9, 2}, {}}}},    // 12v5 = 2C(3,7) + 2C(5,9)
    {{1, 1, 1, 1}, 6, 24, 3, {{{5, 6, 2}, {7, 8, 2}, {9, 10, 2}}}},  // 24v6
    {{1, 1, 0, 2}, 7, 12, 2, {{{4, 7, 2}, {6, 10, 2}, {}}}},   // 12v7 = 2C(4,7) + 2C(6,10)
    {{1, 0, 3, 0}, 6, 4, 1, {{{3, 5, 2}, {}, {}}}},            // 4v6 = 2C(3,5)
    {{1, 0, 2, 1}, 7, 12, 2, {{{3, 10, 2}, {5, 8, 2}, {}}}},   // 12v7 = 2C(3,10) + 2C(5,8)
    {{1, 0, 1, 2}, 8, 12, 2, {{{4, 5, 2}, {8, 10, 2}, {}}}},   // 12v8 = 2C(4,5) + 2C(8,10)
    {{1, 0, 0, 3}, 9, 4, 1, {{{4, 10, 2}, {}, {}}}},           // 4v9 = 2C(4,10)
    {{0, 4, 0, 0}, 4, 1, 1, {{{2, 2, 1}, {}, {}}}},            // v4 = C(2,2)
    {{0, 3, 1, 0}, 5, 4, 1, {{{2, 9, 2}, {}, {}}}},            // 4v5 = 2C(2,9)
    {{0, 3, 0, 1}, 6, 4, 1, {{{2, 6, 2}, {}, {}}}},            // 4v6 = 2C(2,6)
    {{0, 2, 2, 0}, 6, 6, 2, {{{2, 3, 2}, {9, 9, 1}, {}}}},     // 6v6 = 2C(2,3) + C(9,9)
    {{0, 2, 1, 1}, 7, 12, 2, {{{2, 8, 2}, {6, 9, 2}, {}}}},    // 12v7 = 2C(2,8) + 2C(6,9)
    {{0, 2, 0, 2}, 8, 6, 2, {{{2, 4, 2}, {6, 6, 1}, {}}}},     // 6v8 = 2C(2,4) + C(6,6)
    {{0, 1, 3, 0}, 7, 4, 1, {{{3, 9, 2}, {}, {}}}},            // 4v7 = 2C(3,9)
    {{0, 1, 2, 1}, 8, 12, 2, {{{3, 6, 2}, {8, 9, 2}, {}}}},    // 12v8 = 2C(3,6) + 2C(8,9)
    {{0, 1, 1, 2}, 9, 12, 2, {{{4, 9, 2}, {6, 8, 2}, {}}}},    // 12v9 = 2C(4,9) + 2C(6,8)
    {{0, 1, 0, 3}, 10, 4, 1, {{{4, 6, 2}, {}, {}}}},           // 4v10 = 2C(4,6)
    {{0, 0, 4, 0}, 8, 1, 1, {{{3, 3, 1}, {}, {}}}},            // v8 = C(3,3)
    {{0, 0, 3, 1}, 9, 4, 1, {{{3, 8, 2}, {}, {}}}},            // 4v9 = 2C(3,8)
    {{0, 0, 2, 2}, 10, 6, 2, {{{3, 4, 2}, {8, 8, 1}, {}}}},    // 6v10 = 2C(3,4) + C(8,8)
    {{0, 0, 1, 3}, 11, 4, 1, {{{4, 8, 2}, {}, {}}}},           // 4v11 = 2C(4,8)
    {{0, 0, 0, 4}, 12, 1, 1, {{{4, 4, 1}, {}, {}}}},           // v12 = C(4,4)
}};

// Coefficients of u^T C u, generated from the basis product table (route
// 2; shares nothing with kConstraintTable).
template <typename T>
QuarticCoeffs<T> gram_to_quartic_tri(const std::array<T, kTriCount>& tri) {
    QuarticCoeffs<T> out{};
    for (int i = 0; i < kGramDim; ++i) {
        out[kPairMonomial[i][i]] += tri[tri_index(i, i)];
        for (int j = i + 1; j < kGramDim; ++j)
            out[kPairMonomial[i][j]] += T(2) * tri[tri_index(i, j)];
    }
    return out;
}

inline QuarticPoly gram_to_quartic(const GramMatrix& c) { return gram_to_quartic_tri(c.tri()); }

// A maps the 55 packed Gram entries to the 35 quartic coefficients;
// off-diagonal entries enter with weight 2.  b is the coefficient vector
// of the Hankel quartic.
struct ConstraintSystem {
    std::array<std::array<double, kTriCount>, kQuarticCount> A{};
    std::array<double, kQuarticCount> b{};
};

inline ConstraintSystem build_constraints(const GeneratingVector& g) {
    ConstraintSystem cs;
    for (int m = 0; m < kQuarticCount; ++m) {
        const BasisPairList& lst = kMonomialPairs[m];
        for (int t = 0; t < lst.count; ++t) {
            const int i = lst.pairs[t].i;
            const int j = lst.pairs[t].j;
            cs.A[m][tri_index(i, j)] = (i == j) ? 1.0 : 2.0;
        }
    }
    cs.b = quartic_from_generating(g);
    return cs;
}

// Evaluates the hand-entered table at a triangular alpha array (packed
// like tri_index: alpha[tri_index(k,j)] = alpha_{k+1,j+1}, k <= j) and a
// full 13-long v array.  Returns target-minus-expansion per canonical
// monomial, so a valid decomposition gives the zero vector.
template <typename T>
std::array<T, kQuarticCount> constraint_table_residual_alpha(
    const std::array<T, kTriCount>& alpha, const std::array<T, kGeneratingLen>& v) {
    std::array<T, kQuarticCount> res{};
    for (int m = 0; m < kQuarticCount; ++m) {
        const ConstraintRow& row = kConstraintTable[m];
        T rhs{};
        for (int t = 0; t < row.nterms; ++t) {
            const int i = row.terms[t].i - 1;  // table is 1-based
            const int j = row.terms[t].j - 1;
            const int lim = i < j ? i : j;
            T c{};
            for (int k = 0; k <= lim; ++k) c += alpha[tri_index(k, i)] * alpha[tri_index(k, j)];
            rhs += T(row.terms[t].mult) * c;
        }
        res[m] = T(row.multinom) * v[row.vsym] - rhs;
    }
    return res;
}

}  // namespace hankel_sos
