#ifndef CAMSIM_SIM_HPP
#define CAMSIM_SIM_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "camsim/config.hpp"
#include "camsim/metrics.hpp"

namespace camsim {

// One controller-trace record. Notification rows carry the delivered CBR and
// no gap; generation rows carry the realized gap and repeat the last load.
struct TraceRow {
  NodeId node = kNoNode;
  std::int64_t t_us = 0;
  double cbr = -1.0;  // < 0 on generation rows
  double cl = 0.0;
  std::string state;
  std::int64_t setting_ms = 0;
  std::int64_t realized_gap_us = -1;  // < 0 on notification rows
};

struct RunResult {
  std::shared_ptr<const Scenario> scenario;
  std::unique_ptr<MetricsStore> metrics;
  std::vector<TraceRow> trace;
  std::int64_t frames_generated = 0;  // whole run, warmup included
  std::int64_t queue_drops = 0;
};

// Executes one run to completion. Pure function of the config: identical
// configs produce identical results, including the trace, bit for bit.
RunResult run_simulation(const RunConfig& cfg);

}  // namespace camsim

#endif
