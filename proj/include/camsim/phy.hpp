#ifndef CAMSIM_PHY_HPP
#define CAMSIM_PHY_HPP

#include <cmath>
#include <cstdint>
#include <optional>

#include "camsim/scenario.hpp"
#include "camsim/time.hpp"

namespace camsim {

// Free-space path loss at 1 m for the given carrier, 20*log10(4*pi*f/c).
double free_space_loss_1m_db(double carrier_hz);

inline constexpr double kCarrierHz = 5.9e9;

struct RadioParams {
  double tx_power_dbm = 23.0;
  double antenna_gain_dbi = 1.0;  // each end
  double ed_threshold_dbm = -95.0;
  double pathloss_exponent = 2.0;
  double ref_loss_db_at_1m = 47.86;  // overwritten by Friis default unless configured
  double noise_floor_dbm = -99.0;
  double sinr_threshold_db = 8.0;  // QPSK 1/2
  std::int64_t data_rate_bps = 6'000'000;
  std::int64_t preamble_us = 40;
  std::int64_t symbol_us = 8;
  int bits_per_symbol = 48;
  int frame_overhead_bytes = 68;  // MAC 36 + LLC/SNAP 8 + IP 20 + UDP 8
  // When false, per-node sensitivity offsets apply to carrier sense / CBR
  // only, not to the decode gate.
  bool offset_applies_to_decode = true;

  static RadioParams defaults();
};

// Log-distance model; distances below 1 m clamp to the reference point.
double path_loss_db(const RadioParams& p, double distance_m);

double rx_power_dbm(const RadioParams& p, double distance_m);
double rx_power_dbm(const RadioParams& p, const NodeSpec& tx, const NodeSpec& rx);

// Frame airtime: preamble plus OFDM data symbols covering service bits (16),
// the MPDU, and tail bits (6).
std::int64_t airtime_us(const RadioParams& p, int mpdu_bytes);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

struct Transmission {
  std::uint64_t frame_id = 0;
  NodeId tx_node = kNoNode;
  SimTime start;
  SimTime end;
  double tx_power_dbm = 0.0;
  int payload_bytes = 0;
};

enum class RxOutcome : std::uint8_t {
  Received,
  LostBelowSensitivity,
  LostCollision,
  LostHalfDuplex,
};
const char* to_string(RxOutcome o);

// Busy-time bookkeeping for one node's CBR window. Busy intervals are fed
// with non-decreasing start times and may overlap; overlapping time counts
// once (interval union). Windows have fixed length; the first window starts
// at the monitor's phase.
class CbrMonitor {
 public:
  CbrMonitor() = default;
  CbrMonitor(std::int64_t window_us, std::int64_t phase_us);

  std::int64_t window_us() const { return window_us_; }
  std::int64_t phase_us() const { return phase_us_; }

  void add_busy_interval(std::int64_t start_us, std::int64_t end_us);

  // Closes the window ending at `close_us` (phase + k*window). A busy period
  // still open at the boundary is passed as `open_since_us`; its remainder
  // carries into the next window. Returns the window's CBR in [0, 1].
  double close(std::int64_t close_us, std::optional<std::int64_t> open_since_us);

  double last_cbr() const { return last_cbr_; }

 private:
  void flush_merged();

  std::int64_t window_us_ = 100'000;
  std::int64_t phase_us_ = 0;
  std::int64_t window_start_us_ = 0;
  std::int64_t accum_us_ = 0;
  std::int64_t merged_start_us_ = 0;
  std::int64_t merged_end_us_ = 0;
  bool has_merged_ = false;
  double last_cbr_ = 0.0;
};

}  // namespace camsim

#endif
