#include "camsim/metrics.hpp"

#include <cassert>
#include <stdexcept>

namespace camsim {

std::optional<double> jain_index(std::span<const std::int64_t> counts) {
  if (counts.empty()) return std::nullopt;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const std::int64_t x : counts) {
    const double v = static_cast<double>(x);
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) return std::nullopt;
  return (sum * sum) / (static_cast<double>(counts.size()) * sum_sq);
}

MetricsStore::MetricsStore(const Scenario& scenario, const Medium& medium, std::int64_t warmup_us,
                           std::int64_t duration_us, std::int64_t bin_us, double dist_bin_m)
    : n_(static_cast<int>(scenario.nodes.size())),
      warmup_us_(warmup_us),
      duration_us_(duration_us),
      bin_us_(bin_us),
      dist_bin_m_(dist_bin_m) {
  if (warmup_us < 0 || duration_us <= warmup_us)
    throw std::invalid_argument("MetricsStore: duration must exceed warmup");
  if (bin_us <= 0 || dist_bin_m <= 0)
    throw std::invalid_argument("MetricsStore: bin sizes must be positive");

  int max_bin = 0;
  pair_bin_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (NodeId a = 0; a < n_; ++a) {
    for (NodeId b = 0; b < n_; ++b) {
      if (a == b) continue;
      const int bin = distance_bin(medium.distance_m(a, b));
      if (bin > 255) throw std::invalid_argument("MetricsStore: distance bin exceeds ledger width");
      pair_bin_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::uint8_t>(bin);
      if (bin > max_bin) max_bin = bin;
    }
  }
  n_dist_bins_ = max_bin + 1;

  receivers_per_bin_.assign(static_cast<std::size_t>(n_) * n_dist_bins_, 0);
  for (NodeId v = 0; v < n_; ++v) {
    if (scenario.nodes[v].role != NodeRole::Vehicle) continue;
    for (NodeId rx = 0; rx < n_; ++rx) {
      if (rx == v) continue;
      ++receivers_per_bin_[static_cast<std::size_t>(v) * n_dist_bins_ +
                           pair_bin_[static_cast<std::size_t>(v) * n_ + rx]];
    }
  }

  auto init_bins = [this](PairBins& p) {
    p.generated.assign(n_dist_bins_, 0);
    p.received.assign(n_dist_bins_, 0);
    p.pir_samples.assign(n_dist_bins_, 0);
    p.pir_sum_s.assign(n_dist_bins_, 0.0);
  };
  init_bins(all_);
  init_bins(rsu_rx_);

  last_rx_us_.assign(static_cast<std::size_t>(n_) * n_, -1);
  tx_per_vehicle_.assign(scenario.vehicle_count(), 0);

  const std::int64_t span = duration_us - warmup_us;
  const std::size_t n_time_bins = static_cast<std::size_t>(span / bin_us);
  tx_time_bins_.assign(n_time_bins, 0);
  cbr_time_bins_.assign(n_time_bins, 0.0);
  bin_closed_.assign(n_time_bins, 0);

  roles_.resize(n_);
  for (NodeId i = 0; i < n_; ++i) roles_[i] = scenario.nodes[i].role;

  latest_cbr_.assign(n_, 0.0);
  node_monitored_.assign(n_, 0);
  for (NodeId i = 0; i < n_; ++i) {
    if (medium.has_monitor(i)) {
      node_monitored_[i] = 1;
      ++monitored_count_;
    }
  }
}

void MetricsStore::on_generated(NodeId vehicle, std::uint64_t frame_id, SimTime t) {
  if (frame_counted_.size() <= frame_id) frame_counted_.resize(frame_id + 1, 0);
  if (t.us < warmup_us_) return;
  frame_counted_[frame_id] = 1;
  ++counted_frames_;

  // The denominator counts generated CAMs toward every potential receiver;
  // frames later dropped by queue replacement are simply never received.
  const std::int64_t* per_bin = &receivers_per_bin_[static_cast<std::size_t>(vehicle) * n_dist_bins_];
  for (int b = 0; b < n_dist_bins_; ++b) all_.generated[b] += per_bin[b];
  for (NodeId rx = 0; rx < n_; ++rx) {
    if (rx == vehicle || roles_[rx] != NodeRole::Rsu) continue;
    ++rsu_rx_.generated[pair_bin_[static_cast<std::size_t>(vehicle) * n_ + rx]];
  }
}

void MetricsStore::on_tx_start(const Transmission& txm) {
  ++total_tx_frames_;
  if (txm.start.us < warmup_us_) return;
  ++tx_per_vehicle_[txm.tx_node];
  const std::size_t bin = static_cast<std::size_t>((txm.start.us - warmup_us_) / bin_us_);
  if (bin < tx_time_bins_.size()) ++tx_time_bins_[bin];
}

void MetricsStore::on_disposition(const Disposition& d) {
  ++total_dispositions_;
  ++outcome_counts_[static_cast<std::size_t>(d.outcome)];
  if (d.outcome != RxOutcome::Received) return;

  const std::size_t pair = static_cast<std::size_t>(d.tx_node) * n_ + d.rx_node;
  const int bin = pair_bin_[pair];
  const bool rsu = roles_[d.rx_node] == NodeRole::Rsu;

  if (d.frame_id < frame_counted_.size() && frame_counted_[d.frame_id]) {
    ++all_.received[bin];
    if (rsu) ++rsu_rx_.received[bin];
  }

  if (d.at.us >= warmup_us_) {
    const std::int64_t last = last_rx_us_[pair];
    if (last >= 0) {
      const double gap_s = static_cast<double>(d.at.us - last) * 1e-6;
      ++all_.pir_samples[bin];
      all_.pir_sum_s[bin] += gap_s;
      if (rsu) {
        ++rsu_rx_.pir_samples[bin];
        rsu_rx_.pir_sum_s[bin] += gap_s;
      }
    }
    last_rx_us_[pair] = d.at.us;
  }
}

void MetricsStore::on_cbr_sample(NodeId node, double cbr, SimTime) { latest_cbr_[node] = cbr; }

void MetricsStore::close_time_bin(SimTime t) {
  const std::int64_t rel = t.us - warmup_us_;
  assert(rel > 0 && rel % bin_us_ == 0);
  const std::size_t bin = static_cast<std::size_t>(rel / bin_us_) - 1;
  if (bin >= cbr_time_bins_.size()) return;
  double sum = 0.0;
  for (NodeId i = 0; i < n_; ++i) {
    if (node_monitored_[i]) sum += latest_cbr_[i];
  }
  cbr_time_bins_[bin] = monitored_count_ > 0 ? sum / monitored_count_ : 0.0;
  bin_closed_[bin] = 1;
}

std::vector<PdrBinStat> MetricsStore::pdr_by_distance() const {
  std::vector<PdrBinStat> out;
  for (int b = 0; b < n_dist_bins_; ++b) {
    if (all_.generated[b] == 0) continue;
    out.push_back(PdrBinStat{bin_center_m(b), all_.generated[b], all_.received[b]});
  }
  return out;
}

std::vector<PdrBinStat> MetricsStore::pdr_by_distance_for_role(NodeRole rx_role) const {
  std::vector<PdrBinStat> out;
  for (int b = 0; b < n_dist_bins_; ++b) {
    const std::int64_t gen = rx_role == NodeRole::Rsu ? rsu_rx_.generated[b]
                                                      : all_.generated[b] - rsu_rx_.generated[b];
    const std::int64_t rcv = rx_role == NodeRole::Rsu ? rsu_rx_.received[b]
                                                      : all_.received[b] - rsu_rx_.received[b];
    if (gen == 0) continue;
    out.push_back(PdrBinStat{bin_center_m(b), gen, rcv});
  }
  return out;
}

std::vector<PirBinStat> MetricsStore::pir_stats() const {
  std::vector<PirBinStat> out;
  for (int b = 0; b < n_dist_bins_; ++b) {
    if (all_.pir_samples[b] == 0) continue;
    out.push_back(PirBinStat{bin_center_m(b), all_.pir_samples[b],
                             all_.pir_sum_s[b] / static_cast<double>(all_.pir_samples[b])});
  }
  return out;
}

std::vector<PirBinStat> MetricsStore::pir_stats_for_role(NodeRole rx_role) const {
  std::vector<PirBinStat> out;
  for (int b = 0; b < n_dist_bins_; ++b) {
    const std::int64_t n = rx_role == NodeRole::Rsu
                               ? rsu_rx_.pir_samples[b]
                               : all_.pir_samples[b] - rsu_rx_.pir_samples[b];
    const double sum = rx_role == NodeRole::Rsu ? rsu_rx_.pir_sum_s[b]
                                                : all_.pir_sum_s[b] - rsu_rx_.pir_sum_s[b];
    if (n == 0) continue;
    out.push_back(PirBinStat{bin_center_m(b), n, sum / static_cast<double>(n)});
  }
  return out;
}

std::vector<TimeBinStat> MetricsStore::tx_and_cbr_bins() const {
  std::vector<TimeBinStat> out;
  out.reserve(tx_time_bins_.size());
  for (std::size_t b = 0; b < tx_time_bins_.size(); ++b) {
    const double start_s = static_cast<double>(warmup_us_ + static_cast<std::int64_t>(b) * bin_us_) * 1e-6;
    out.push_back(TimeBinStat{start_s, tx_time_bins_[b], cbr_time_bins_[b]});
  }
  return out;
}

std::optional<double> MetricsStore::jain() const { return jain_index(tx_per_vehicle_); }

}  // namespace camsim
