#pragma once

// Small deterministic RNG (splitmix64).  Not std::mt19937 on purpose:
// identical streams on every platform and stdlib, which the determinism
// contracts of sphere_min / sweep rely on.

#include <array>
#include <cmath>
#include <cstdint>

namespace hankel_sos {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform direction on the unit 3-sphere in R^4.
    std::array<double, 4> unit4() {
        while (true) {
            std::array<double, 4> x{normal(), normal(), normal(), normal()};
            double n2 = 0.0;
            for (double c : x) n2 += c * c;
            if (n2 < 1e-12) continue;
            const double inv = 1.0 / std::sqrt(n2);
            for (double& c : x) c *= inv;
            return x;
        }
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace hankel_sos
