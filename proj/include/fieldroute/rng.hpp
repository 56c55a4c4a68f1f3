#pragma once

#include <cstdint>
#include <random>

namespace fieldroute {

/// Every stochastic routine draws from this engine. Runs are reproducible
/// for a given seed on a given standard library.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent child streams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child stream for (seed, stream, index). Initialization uses one child per
/// individual so the population is identical regardless of thread count.
inline Rng child_stream(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t index) {
  return Rng{mix64(mix64(mix64(seed) ^ stream) ^ index)};
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Uniform integer in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace fieldroute
