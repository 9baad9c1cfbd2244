#ifndef CAMSIM_RNG_HPP
#define CAMSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace camsim::rng {

// Per-node, per-purpose random streams derived from the run seed.
// std::mt19937_64 output is bit-exact per the standard; the mapping helpers
// below replace std::uniform_*_distribution, whose sequences are
// implementation-defined and would break byte-identical outputs across
// toolchains.

enum class Stream : std::uint64_t {
  CbrPhase = 1,
  MacBackoff = 2,
  DccInterval = 3,
  SensitivityOffset = 4,
};

std::uint64_t splitmix64(std::uint64_t& state);

std::mt19937_64 make_stream(std::uint64_t seed, std::int64_t node, Stream stream);

// Uniform integer in [0, n), n > 0. Rejection sampling over a power-of-two
// mask keeps the draw unbiased and the consumed sequence deterministic.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n);

// Uniform integer in [lo, hi], inclusive.
std::int64_t uniform_closed(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64& gen);

double uniform_real(std::mt19937_64& gen, double lo, double hi);

}  // namespace camsim::rng

#endif
