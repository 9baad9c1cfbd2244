#include "camsim/sim.hpp"

#include <cmath>

#include "camsim/dcc.hpp"
#include "camsim/engine.hpp"
#include "camsim/mac.hpp"
#include "camsim/medium.hpp"
#include "camsim/rng.hpp"

namespace camsim {

namespace {

// Mirrors the paper's plotting convention: a value is recorded only when it
// differs from the node's previously recorded value of the same series.
class TraceCollector {
 public:
  TraceCollector(int n, const DccTable& table, bool variant_off)
      : table_(table), variant_off_(variant_off), last_(n) {}

  void on_trace(NodeId node, SimTime t, double cbr, double cl, std::size_t row,
                std::int64_t setting_ms, std::int64_t gap_us) {
    Last& last = last_[node];
    if (gap_us >= 0) {
      if (last.has_gap && last.gap_us == gap_us) return;
      last.has_gap = true;
      last.gap_us = gap_us;
      rows_.push_back(TraceRow{node, t.us, -1.0, cl, state_name(row), setting_ms, gap_us});
    } else {
      if (last.has_note && last.cbr == cbr && last.cl == cl && last.row == row &&
          last.setting_ms == setting_ms) {
        return;
      }
      last.has_note = true;
      last.cbr = cbr;
      last.cl = cl;
      last.row = row;
      last.setting_ms = setting_ms;
      rows_.push_back(TraceRow{node, t.us, cbr, cl, state_name(row), setting_ms, -1});
    }
  }

  std::vector<TraceRow> take() { return std::move(rows_); }

 private:
  std::string state_name(std::size_t row) const {
    return variant_off_ ? "Off" : table_.state_name(row);
  }

  struct Last {
    bool has_note = false;
    bool has_gap = false;
    double cbr = 0.0;
    double cl = 0.0;
    std::size_t row = 0;
    std::int64_t setting_ms = 0;
    std::int64_t gap_us = 0;
  };

  const DccTable& table_;
  bool variant_off_;
  std::vector<Last> last_;
  std::vector<TraceRow> rows_;
};

}  // namespace

RunResult run_simulation(const RunConfig& cfg) {
  validate(cfg);

  RunResult result;
  result.scenario = std::make_shared<Scenario>(
      build_highway(cfg.road, cfg.density, cfg.heterogeneity, cfg.seed));
  const Scenario& scenario = *result.scenario;
  const int n = static_cast<int>(scenario.nodes.size());
  const int vehicles = scenario.vehicle_count();

  EventQueue engine;
  Medium medium(engine, scenario, cfg.radio, cfg.cbr_window_us, cfg.rsu_cbr_monitors);
  result.metrics = std::make_unique<MetricsStore>(scenario, medium, cfg.warmup_us,
                                                  cfg.duration_us, cfg.metrics_bin_us,
                                                  cfg.dist_bin_m);
  MetricsStore& metrics = *result.metrics;

  const DccTable table = DccTable::standard();
  TraceCollector trace(n, table, cfg.variant.off);

  std::vector<std::unique_ptr<Mac>> macs(n);
  std::vector<std::unique_ptr<DccController>> controllers(n);
  std::uint64_t next_frame_id = 0;

  auto generate = [&](NodeId node, SimTime t) {
    const std::uint64_t frame_id = next_frame_id++;
    ++result.frames_generated;
    metrics.on_generated(node, frame_id, t);
    macs[node]->enqueue_cam(frame_id, cfg.cam_payload_bytes);
  };

  for (NodeId v = 0; v < n; ++v) {
    if (scenario.nodes[v].role != NodeRole::Vehicle) continue;
    macs[v] = std::make_unique<Mac>(engine, medium, v, cfg.mac,
                                    rng::make_stream(cfg.seed, v, rng::Stream::MacBackoff));
    controllers[v] = std::make_unique<DccController>(
        engine, v, cfg.variant, table, cfg.alpha, cfg.retrigger,
        rng::make_stream(cfg.seed, v, rng::Stream::DccInterval), generate);
    if (cfg.controller_trace) {
      controllers[v]->set_trace([&trace](NodeId node, SimTime t, double cbr, double cl,
                                         std::size_t row, std::int64_t setting_ms,
                                         std::int64_t gap_us) {
        trace.on_trace(node, t, cbr, cl, row, setting_ms, gap_us);
      });
    }
  }

  medium.set_tx_start_callback([&](const Transmission& txm) { metrics.on_tx_start(txm); });
  medium.set_disposition_sink([&](const Disposition& d) { metrics.on_disposition(d); });
  medium.set_cbr_callback([&](NodeId node, double cbr, SimTime t) {
    metrics.on_cbr_sample(node, cbr, t);
    if (controllers[node]) controllers[node]->on_cbr_notification(cbr, t);
  });

  medium.start();
  for (NodeId v = 0; v < n; ++v) {
    if (controllers[v]) controllers[v]->start();
  }

  // 20 ms metrics bins, one close event per bin end after warmup.
  const std::int64_t n_bins = (cfg.duration_us - cfg.warmup_us) / cfg.metrics_bin_us;
  for (std::int64_t k = 1; k <= n_bins; ++k) {
    const std::int64_t close_us = cfg.warmup_us + k * cfg.metrics_bin_us;
    engine.schedule(SimTime{close_us},
                    Event{EventKind::MetricsBinClose, kNoNode,
                          [&metrics, close_us] { metrics.close_time_bin(SimTime{close_us}); }});
  }

  engine.run_until(SimTime{cfg.duration_us});

  for (NodeId v = 0; v < n; ++v) {
    if (macs[v]) result.queue_drops += macs[v]->drops_count();
  }
  result.trace = trace.take();
  (void)vehicles;
  return result;
}

}  // namespace camsim
