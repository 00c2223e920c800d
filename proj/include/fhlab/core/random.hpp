#pragma once

#include <cstdint>
#include <random>

namespace fhlab {

/// All seeded randomness goes through mt19937_64. Its output sequence is fixed
/// by the standard, so the helpers below avoid the library-defined
/// distributions to keep draws identical across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling. `bound` must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t draw = rng();
  while (draw > limit) draw = rng();
  return draw % bound;
}

inline std::int64_t uniform_in(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace fhlab
