#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "camsim/medium.hpp"
#include "camsim/phy.hpp"
#include "camsim/rng.hpp"

using namespace camsim;

namespace {

// Friis free-space loss oracle, written out independently of phy.cpp.
double friis_db(double d_m) {
  constexpr double c = 299'792'458.0;
  const double wavelength = c / 5.9e9;
  return 20.0 * std::log10(4.0 * std::numbers::pi * d_m / wavelength);
}

// Symbol-count oracle: pack bits one symbol at a time.
std::int64_t airtime_oracle_us(int mpdu_bytes) {
  std::int64_t bits = 16 + 8 * static_cast<std::int64_t>(mpdu_bytes) + 6;
  std::int64_t symbols = 0;
  while (bits > 0) {
    ++symbols;
    bits -= 48;
  }
  return 40 + symbols * 8;
}

// Brute-force interval union measure on a microsecond grid.
std::int64_t union_measure_oracle(std::vector<std::pair<std::int64_t, std::int64_t>> intervals,
                                  std::int64_t lo, std::int64_t hi) {
  std::sort(intervals.begin(), intervals.end());
  std::int64_t total = 0;
  std::int64_t cursor = lo;
  for (const auto& [a, b] : intervals) {
    const std::int64_t s = std::max(a, cursor);
    const std::int64_t e = std::min(b, hi);
    if (e > s) {
      total += e - s;
      cursor = e;
    }
    cursor = std::max(cursor, std::min(b, hi));
  }
  return total;
}

}  // namespace

TEST_CASE("path loss matches the Friis oracle at the reference point") {
  const RadioParams p = RadioParams::defaults();
  CHECK(p.ref_loss_db_at_1m == doctest::Approx(friis_db(1.0)));
  CHECK(path_loss_db(p, 1.0) == doctest::Approx(47.86).epsilon(0.001));
  CHECK(path_loss_db(p, 10.0) == doctest::Approx(67.86).epsilon(0.001));
  CHECK(path_loss_db(p, 100.0) == doctest::Approx(87.86).epsilon(0.001));
  // log-distance with exponent 2 equals free space at every distance
  CHECK(path_loss_db(p, 250.0) == doctest::Approx(friis_db(250.0)));
}

TEST_CASE("degenerate distances clamp to 1 m") {
  const RadioParams p = RadioParams::defaults();
  CHECK(path_loss_db(p, 0.001) == path_loss_db(p, 1.0));
}

TEST_CASE("path loss strictly increases beyond 1 m") {
  const RadioParams p = RadioParams::defaults();
  double prev = path_loss_db(p, 1.0);
  for (double d = 1.5; d < 3000.0; d *= 1.37) {
    const double pl = path_loss_db(p, d);
    CHECK(pl > prev);
    prev = pl;
  }
}

TEST_CASE("link budget") {
  const RadioParams p = RadioParams::defaults();
  CHECK(rx_power_dbm(p, 100.0) == doctest::Approx(-62.86).epsilon(0.001));
  CHECK(rx_power_dbm(p, 1.0) == doctest::Approx(-22.86).epsilon(0.001));
  RadioParams zero_gain = p;
  zero_gain.antenna_gain_dbi = 0.0;
  CHECK(rx_power_dbm(zero_gain, 1.0) == doctest::Approx(-24.86).epsilon(0.001));
}

TEST_CASE("airtime follows the OFDM symbol-count oracle") {
  const RadioParams p = RadioParams::defaults();
  CHECK(airtime_us(p, 468) == 672);  // 400-byte CAM + 68 overhead
  CHECK(airtime_us(p, 0) == 48);     // service + tail bits force one symbol
  CHECK(airtime_us(p, 24) == 80);
  for (int bytes : {1, 5, 47, 48, 49, 255, 400, 467, 1500}) {
    CHECK(airtime_us(p, bytes) == airtime_oracle_us(bytes));
  }
}

TEST_CASE("airtime is monotone non-decreasing in frame length") {
  const RadioParams p = RadioParams::defaults();
  std::int64_t prev = airtime_us(p, 0);
  for (int bytes = 1; bytes <= 2000; ++bytes) {
    const std::int64_t t = airtime_us(p, bytes);
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("CBR window accounting") {
  SUBCASE("4 ms busy in a 100 ms window") {
    CbrMonitor mon(100'000, 0);
    mon.add_busy_interval(10'000, 14'000);
    CHECK(mon.close(100'000, std::nullopt) == doctest::Approx(0.04));
  }
  SUBCASE("overlapping intervals count once") {
    CbrMonitor mon(100'000, 0);
    mon.add_busy_interval(0, 5'000);
    mon.add_busy_interval(3'000, 8'000);
    CHECK(mon.close(100'000, std::nullopt) == doctest::Approx(0.08));
  }
  SUBCASE("fully busy window") {
    CbrMonitor mon(100'000, 0);
    CHECK(mon.close(100'000, 0) == doctest::Approx(1.0));
  }
  SUBCASE("busy period carries across window boundaries") {
    CbrMonitor mon(100'000, 0);
    // busy from 90 ms, still open at the first close
    CHECK(mon.close(100'000, 90'000) == doctest::Approx(0.10));
    // the same period ends at 130 ms inside the second window
    mon.add_busy_interval(90'000, 130'000);
    CHECK(mon.close(200'000, std::nullopt) == doctest::Approx(0.30));
  }
  SUBCASE("phase offsets the first window") {
    CbrMonitor mon(100'000, 40'000);
    mon.add_busy_interval(0, 50'000);  // only [40, 50) ms falls in the window
    CHECK(mon.close(140'000, std::nullopt) == doctest::Approx(0.10));
  }
}

TEST_CASE("CBR equals the union oracle on random busy traces") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t window = 10'000;
    CbrMonitor mon(window, 0);
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
    std::int64_t start = 0;
    while (true) {
      start += static_cast<std::int64_t>(rng::uniform_below(gen, 2'000));
      if (start >= window) break;
      const std::int64_t len = 1 + static_cast<std::int64_t>(rng::uniform_below(gen, 3'000));
      // overlap the previous interval half of the time
      const std::int64_t a = trial % 2 == 0 && !intervals.empty()
                                 ? std::max<std::int64_t>(0, start - 500)
                                 : start;
      intervals.emplace_back(a, std::min(a + len, window));
    }
    std::sort(intervals.begin(), intervals.end());
    for (const auto& [a, b] : intervals) mon.add_busy_interval(a, b);
    const double cbr = mon.close(window, std::nullopt);
    const double expected =
        static_cast<double>(union_measure_oracle(intervals, 0, window)) / window;
    CHECK(cbr == doctest::Approx(expected));
    CHECK(cbr >= 0.0);
    CHECK(cbr <= 1.0);
  }
}

TEST_CASE("reception outcome precedence") {
  const double noise = dbm_to_mw(-99.0);
  const double sinr = dbm_to_mw(8.0);
  const double thr = dbm_to_mw(-95.0);
  const double sig = dbm_to_mw(-62.86);

  CHECK(reception_outcome(sig, 0.0, noise, sinr, thr, false) == RxOutcome::Received);
  CHECK(reception_outcome(sig, 0.0, noise, sinr, thr, true) == RxOutcome::LostHalfDuplex);
  CHECK(reception_outcome(dbm_to_mw(-96.0), 0.0, noise, sinr, thr, false) ==
        RxOutcome::LostBelowSensitivity);
  // equal-power interferer: SINR ~ 0 dB < 8 dB
  CHECK(reception_outcome(sig, sig, noise, sinr, thr, false) == RxOutcome::LostCollision);
  // half-duplex wins over everything else
  CHECK(reception_outcome(dbm_to_mw(-120.0), sig, noise, sinr, thr, true) ==
        RxOutcome::LostHalfDuplex);
}
