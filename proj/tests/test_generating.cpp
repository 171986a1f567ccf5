#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "hankel_sos/generating.hpp"
#include "hankel_sos/rng.hpp"
#include "oracles.hpp"

using namespace hankel_sos;

namespace {

GeneratingVector random_generating(Rng& rng) {
    std::array<double, 7> f;
    for (auto& c : f) c = rng.uniform(-2, 2);
    f[4] = 1.0;
    return GeneratingVector::from_free(f);
}

}  // namespace

TEST_CASE("construction validates symmetry and normalization") {
    CHECK_THROWS_AS(GeneratingVector::from_free({1, 1, 1, 1, 0.5, 1, 1}), InvalidInputError);

    std::array<double, 13> full{};
    full.fill(1.0);
    CHECK_NOTHROW(GeneratingVector::from_full(full));

    full[4] = 2.0;  // breaks both v4 = 1 and v4 = v8
    CHECK_THROWS_AS(GeneratingVector::from_full(full), InvalidInputError);

    full[4] = 1.0;
    full[2] = 3.0;  // v2 != v10
    CHECK_THROWS_AS(GeneratingVector::from_full(full), InvalidInputError);

    auto g = GeneratingVector::from_params(2.5, 0.1, -0.2, 0.3, 0.4, -0.5);
    CHECK(g[0] == 2.5);
    CHECK(g[12] == 2.5);
    CHECK(g[4] == 1.0);
    CHECK(g[8] == 1.0);
    CHECK(g[7] == 0.4);   // v7 = v5
    CHECK(g[10] == -0.2); // v10 = v2

    auto g2 = g.with_v0(-7.0);
    CHECK(g2[0] == -7.0);
    CHECK(g2[12] == -7.0);
    CHECK(g2[1] == g[1]);
}

TEST_CASE("quartic_from_generating named coefficients") {
    Rng rng(5);
    auto g = random_generating(rng);
    const auto p = quartic_from_generating(g);
    CHECK(p[monomial_index({4, 0, 0, 0})] == g[0]);
    CHECK(p[monomial_index({3, 1, 0, 0})] == 4.0 * g[1]);
    CHECK(p[monomial_index({0, 4, 0, 0})] == 1.0);
    CHECK(p[monomial_index({1, 1, 1, 1})] == 24.0 * g[6]);
}

TEST_CASE("all-ones generating vector gives (x1+x2+x3+x4)^4") {
    auto g = GeneratingVector::from_free({1, 1, 1, 1, 1, 1, 1});
    const auto p = quartic_from_generating(g);
    std::array<double, 13> ones;
    ones.fill(1.0);
    const auto expect = oracles::quartic_coeffs_brute(ones);
    for (int a = 0; a < 35; ++a) CHECK(p[a] == expect[a]);
}

TEST_CASE("polynomial route matches brute-force tensor contraction") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_generating(rng);
        Vec4 x;
        for (auto& c : x) c = rng.uniform(-1, 1);
        const double via_poly = evaluate(quartic_from_generating(g), x);
        const double via_tensor = oracles::contract_tensor(HankelTensor(g), x);
        CHECK(via_poly == Catch::Approx(via_tensor).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("gradient") {
    SECTION("all-ones at the all-ones point") {
        auto g = GeneratingVector::from_free({1, 1, 1, 1, 1, 1, 1});
        const Vec4 grad = gradient(g, {1, 1, 1, 1});
        for (int i = 0; i < 4; ++i) CHECK(grad[i] == Catch::Approx(256.0).epsilon(1e-13));
    }
    SECTION("zero point") {
        auto g = GeneratingVector::from_params(2, 0.3, -0.4, 0.5, 0.1, -0.9);
        const Vec4 grad = gradient(g, {0, 0, 0, 0});
        for (int i = 0; i < 4; ++i) CHECK(grad[i] == 0.0);
    }
    SECTION("matches central differences") {
        Rng rng(7);
        for (int trial = 0; trial < 100; ++trial) {
            auto g = random_generating(rng);
            Vec4 x;
            for (auto& c : x) c = rng.uniform(-1, 1);
            const Vec4 grad = gradient(g, x);
            for (int i = 0; i < 4; ++i) {
                const double fd = oracles::fd_gradient(g, x, i, 1e-5);
                CHECK(grad[i] == Catch::Approx(fd).margin(1e-6).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("Euler identity x . grad f = 4 f") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_generating(rng);
        Vec4 x;
        for (auto& c : x) c = rng.uniform(-2, 2);
        const Vec4 grad = gradient(g, x);
        double dot = 0.0;
        for (int i = 0; i < 4; ++i) dot += x[i] * grad[i];
        const double f = evaluate(quartic_from_generating(g), x);
        CHECK(dot == Catch::Approx(4.0 * f).epsilon(1e-10).margin(1e-10));
    }
}

TEST_CASE("index reversal symmetry at the coefficient level") {
    Rng rng(11);
    auto g = random_generating(rng);
    const auto p = quartic_from_generating(g);
    for (int a = 0; a < 35; ++a) {
        Exponent e = kQuarticExponents[a];
        Exponent rev{e[3], e[2], e[1], e[0]};
        CHECK(p[a] == p[monomial_index(rev)]);
    }
}
