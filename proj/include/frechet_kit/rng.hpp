#pragma once

#include <cstdint>
#include <random>

#include "frechet_kit/point.hpp"

namespace fk {

// Library-independent draws so seeded output is identical across standard libraries.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

// Uniform direction via rejection from the cube.
inline Vec random_unit(Rng& rng, int d) {
  while (true) {
    Vec v(d);
    for (int k = 0; k < d; ++k) v[k] = uniform(rng, -1, 1);
    double n2 = norm2(v);
    if (n2 > 1e-6 && n2 <= 1.0) return v * (1.0 / std::sqrt(n2));
  }
}

}  // namespace fk
