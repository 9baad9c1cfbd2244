#ifndef CAMSIM_METRICS_HPP
#define CAMSIM_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "camsim/medium.hpp"
#include "camsim/scenario.hpp"
#include "camsim/time.hpp"

namespace camsim {

// (sum x)^2 / (n * sum x^2); empty or all-zero input has no defined value.
std::optional<double> jain_index(std::span<const std::int64_t> counts);

struct PdrBinStat {
  int bin_center_m = 0;
  std::int64_t generated = 0;  // generated frames x potential receivers
  std::int64_t received = 0;
  double pdr() const { return generated > 0 ? static_cast<double>(received) / generated : 0.0; }
};

struct PirBinStat {
  int bin_center_m = 0;
  std::int64_t samples = 0;
  double mean_pir_s = 0.0;
};

struct TimeBinStat {
  double bin_start_s = 0.0;
  std::int64_t tx_count = 0;
  double mean_cbr = 0.0;
};

// Aggregates every run metric online; nothing here allocates per frame.
// Everything before `warmup` is excluded: generated frames count only when
// generated after warmup, receptions/PIR gaps only at dispositions after
// warmup, transmissions only when started after warmup.
class MetricsStore {
 public:
  MetricsStore(const Scenario& scenario, const Medium& medium, std::int64_t warmup_us,
               std::int64_t duration_us, std::int64_t bin_us = 20'000, double dist_bin_m = 40.0);

  void on_generated(NodeId vehicle, std::uint64_t frame_id, SimTime t);
  void on_tx_start(const Transmission& txm);
  void on_disposition(const Disposition& d);
  void on_cbr_sample(NodeId node, double cbr, SimTime t);

  // Samples the per-node piecewise-constant CBR at the closing bin boundary.
  void close_time_bin(SimTime t);

  // Post-run views. Empty distance bins are omitted.
  std::vector<PdrBinStat> pdr_by_distance() const;
  std::vector<PdrBinStat> pdr_by_distance_for_role(NodeRole rx_role) const;
  std::vector<PirBinStat> pir_stats() const;
  std::vector<PirBinStat> pir_stats_for_role(NodeRole rx_role) const;
  std::vector<TimeBinStat> tx_and_cbr_bins() const;
  std::optional<double> jain() const;

  std::span<const std::int64_t> per_vehicle_tx_counts() const { return tx_per_vehicle_; }
  std::int64_t counted_generated_frames() const { return counted_frames_; }

  // Whole-run conservation diagnostics (warmup included).
  std::int64_t total_transmitted_frames() const { return total_tx_frames_; }
  std::int64_t total_dispositions() const { return total_dispositions_; }
  std::int64_t dispositions_of(RxOutcome o) const {
    return outcome_counts_[static_cast<std::size_t>(o)];
  }

  int distance_bin(double d_m) const { return static_cast<int>(d_m / dist_bin_m_ + 0.5); }
  int bin_center_m(int bin) const { return static_cast<int>(bin * dist_bin_m_ + 0.5); }
  std::int64_t warmup_us() const { return warmup_us_; }
  std::int64_t bin_us() const { return bin_us_; }

 private:
  struct PairBins {
    std::vector<std::int64_t> generated;
    std::vector<std::int64_t> received;
    std::vector<std::int64_t> pir_samples;
    std::vector<double> pir_sum_s;
  };

  std::vector<NodeRole> roles_;
  int n_ = 0;
  std::int64_t warmup_us_ = 0;
  std::int64_t duration_us_ = 0;
  std::int64_t bin_us_ = 20'000;
  double dist_bin_m_ = 40.0;
  int n_dist_bins_ = 0;

  std::vector<std::uint8_t> pair_bin_;           // [tx * n + rx]
  std::vector<std::int64_t> receivers_per_bin_;  // per vehicle: [v * bins + b]
  PairBins all_;
  PairBins rsu_rx_;  // receiver-role slice; vehicle slice = all - rsu

  std::vector<std::uint8_t> frame_counted_;   // by frame id
  std::vector<std::int64_t> last_rx_us_;      // [tx * n + rx], -1 = none
  std::vector<std::int64_t> tx_per_vehicle_;  // post-warmup transmission counts
  std::vector<std::int64_t> tx_time_bins_;
  std::vector<double> cbr_time_bins_;
  std::vector<std::uint8_t> bin_closed_;
  std::vector<double> latest_cbr_;
  std::vector<std::uint8_t> node_monitored_;
  int monitored_count_ = 0;

  std::int64_t counted_frames_ = 0;
  std::int64_t total_tx_frames_ = 0;
  std::int64_t total_dispositions_ = 0;
  std::int64_t outcome_counts_[4] = {0, 0, 0, 0};
};

}  // namespace camsim

#endif
