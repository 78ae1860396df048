#pragma once

#include <cstdint>
#include <cmath>

#include "core.hpp"

namespace kovatlas {

/// SplitMix64. Used instead of std::mt19937 + distributions so that streams
/// are bit-identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0,1); never returns 0 or 1.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Standard normal via Box-Muller (one value per call; no cached state).
    double normal() {
        double u1 = next_unit();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Uniform on the sphere of given radius (normalized Gaussian triple).
    Vec3 sphere(double radius) {
        Vec3 g;
        double n2;
        do {
            g = {normal(), normal(), normal()};
            n2 = dot(g, g);
        } while (n2 < 1e-24);
        double s = radius / std::sqrt(n2);
        return {g[0] * s, g[1] * s, g[2] * s};
    }

    /// Disjoint child stream for a parallel shard.
    Rng fork(std::uint64_t shard) const {
        Rng child(state_ ^ (0xd1342543de82ef95ULL * (shard + 1)));
        child.next_u64();
        return child;
    }

  private:
    std::uint64_t state_;
};

}  // namespace kovatlas
