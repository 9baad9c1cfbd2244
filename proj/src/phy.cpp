#include "camsim/phy.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace camsim {

double free_space_loss_1m_db(double carrier_hz) {
  constexpr double c = 299'792'458.0;
  return 20.0 * std::log10(4.0 * std::numbers::pi * carrier_hz / c);
}

RadioParams RadioParams::defaults() {
  RadioParams p;
  p.ref_loss_db_at_1m = free_space_loss_1m_db(kCarrierHz);
  return p;
}

double path_loss_db(const RadioParams& p, double distance_m) {
  const double d = std::max(distance_m, 1.0);
  return p.ref_loss_db_at_1m + 10.0 * p.pathloss_exponent * std::log10(d);
}

double rx_power_dbm(const RadioParams& p, double distance_m) {
  return p.tx_power_dbm + 2.0 * p.antenna_gain_dbi - path_loss_db(p, distance_m);
}

double rx_power_dbm(const RadioParams& p, const NodeSpec& tx, const NodeSpec& rx) {
  return rx_power_dbm(p, pair_distance(tx, rx));
}

std::int64_t airtime_us(const RadioParams& p, int mpdu_bytes) {
  if (mpdu_bytes < 0) throw std::invalid_argument("airtime_us: negative frame length");
  const std::int64_t bits = 16 + 8 * static_cast<std::int64_t>(mpdu_bytes) + 6;
  const std::int64_t symbols = (bits + p.bits_per_symbol - 1) / p.bits_per_symbol;
  return p.preamble_us + symbols * p.symbol_us;
}

const char* to_string(RxOutcome o) {
  switch (o) {
    case RxOutcome::Received: return "received";
    case RxOutcome::LostBelowSensitivity: return "below_sensitivity";
    case RxOutcome::LostCollision: return "collision";
    case RxOutcome::LostHalfDuplex: return "half_duplex";
  }
  throw std::logic_error("unreachable");
}

CbrMonitor::CbrMonitor(std::int64_t window_us, std::int64_t phase_us)
    : window_us_(window_us), phase_us_(phase_us), window_start_us_(phase_us) {
  if (window_us <= 0) throw std::invalid_argument("CbrMonitor: window must be positive");
  if (phase_us < 0 || phase_us >= window_us)
    throw std::invalid_argument("CbrMonitor: phase must lie in [0, window)");
}

void CbrMonitor::flush_merged() {
  if (!has_merged_) return;
  const std::int64_t lo = std::max(merged_start_us_, window_start_us_);
  if (merged_end_us_ > lo) accum_us_ += merged_end_us_ - lo;
  has_merged_ = false;
}

void CbrMonitor::add_busy_interval(std::int64_t start_us, std::int64_t end_us) {
  if (end_us < start_us) throw std::invalid_argument("CbrMonitor: interval ends before it starts");
  if (has_merged_ && start_us <= merged_end_us_) {
    merged_end_us_ = std::max(merged_end_us_, end_us);
    return;
  }
  flush_merged();
  merged_start_us_ = start_us;
  merged_end_us_ = end_us;
  has_merged_ = true;
}

double CbrMonitor::close(std::int64_t close_us, std::optional<std::int64_t> open_since_us) {
  if (open_since_us) add_busy_interval(*open_since_us, close_us);
  if (has_merged_) merged_end_us_ = std::min(merged_end_us_, close_us);
  flush_merged();
  last_cbr_ = static_cast<double>(accum_us_) / static_cast<double>(window_us_);
  accum_us_ = 0;
  window_start_us_ = close_us;
  return last_cbr_;
}

}  // namespace camsim
