#include "camsim/rng.hpp"

#include <bit>
#include <stdexcept>

namespace camsim::rng {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::int64_t node, Stream stream) {
  std::uint64_t state = seed;
  splitmix64(state);
  state ^= 0x6a09e667f3bcc909ULL + static_cast<std::uint64_t>(node);
  splitmix64(state);
  state ^= 0xbb67ae8584caa73bULL + static_cast<std::uint64_t>(stream);
  return std::mt19937_64(splitmix64(state));
}

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
  const std::uint64_t mask = std::bit_ceil(n) - 1;
  for (;;) {
    const std::uint64_t v = gen() & mask;
    if (v < n) return v;
  }
}

std::int64_t uniform_closed(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_closed: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(gen());  // full 64-bit range
  return lo + static_cast<std::int64_t>(uniform_below(gen, span));
}

double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double uniform_real(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(gen);
}

}  // namespace camsim::rng
