#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace allostasis {

// mt19937_64 and seed_seq are fully specified by the standard, so a seed
// reproduces the same stream on every conforming toolchain. The helpers
// below avoid the std distributions, whose algorithms are unspecified.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// Uniform integer in [0, n) by rejection sampling.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<std::size_t>(draw % bound);
}

// Independent environment and agent substreams derived from one run seed.
struct RunStreams {
  Rng environment;
  Rng agent;

  static RunStreams from_seed(std::uint64_t seed) {
    const auto lo = static_cast<std::uint32_t>(seed);
    const auto hi = static_cast<std::uint32_t>(seed >> 32);
    std::seed_seq env_seq{lo, hi, 0x454e5600u};
    std::seed_seq agent_seq{lo, hi, 0x41474e00u};
    return RunStreams{Rng(env_seq), Rng(agent_seq)};
  }
};

}  // namespace allostasis
