#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cursamp {

/// Every stochastic routine in the library takes an explicit engine of this type.
using Rng = std::mt19937_64;

/// Derives an independent engine for (seed, stream). Experiments use distinct
/// streams for scheduling and for observation noise so that strategies which
/// draw the same schedule see the same noise.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace cursamp
