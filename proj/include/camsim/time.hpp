#ifndef CAMSIM_TIME_HPP
#define CAMSIM_TIME_HPP

#include <compare>
#include <cstdint>

namespace camsim {

// All simulated time is integer microseconds. Durations are plain int64
// microsecond counts; SimTime is an absolute instant since run start.
struct SimTime {
  std::int64_t us = 0;

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(std::int64_t duration_us) const { return SimTime{us + duration_us}; }
  constexpr SimTime operator-(std::int64_t duration_us) const { return SimTime{us - duration_us}; }
  constexpr std::int64_t operator-(SimTime other) const { return us - other.us; }

  constexpr double seconds() const { return static_cast<double>(us) * 1e-6; }
};

constexpr std::int64_t ms_to_us(std::int64_t ms) { return ms * 1000; }
constexpr std::int64_t s_to_us(double s) { return static_cast<std::int64_t>(s * 1e6 + 0.5); }

}  // namespace camsim

#endif
