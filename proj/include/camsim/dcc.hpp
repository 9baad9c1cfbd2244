#ifndef CAMSIM_DCC_HPP
#define CAMSIM_DCC_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "camsim/engine.hpp"

namespace camsim {

// Reactive DCC state table: channel-load bands mapped to CAM generation
// intervals. Rows partition [0, 1] with inclusive lower bounds.
struct DccTableRow {
  std::string state;
  double cl_lower;  // inclusive
  double cl_upper;  // exclusive, except the last row which includes 1.0
  std::int64_t t_off_ms;
};

class DccTable {
 public:
  static DccTable standard();  // Relaxed .. Restricted, 60 .. 460 ms

  explicit DccTable(std::vector<DccTableRow> rows);

  const std::vector<DccTableRow>& rows() const { return rows_; }
  std::size_t lookup_row(double cl) const;
  std::int64_t lookup_interval_ms(double cl) const;
  const std::string& state_name(std::size_t row) const { return rows_[row].state; }

 private:
  std::vector<DccTableRow> rows_;
};

// Channel-load EWMA: CL_n = (1 - alpha) * CL_{n-1} + alpha * CBR_n.
class ChannelLoad {
 public:
  explicit ChannelLoad(double alpha);

  double update(double cbr);
  double value() const { return cl_; }
  double alpha() const { return alpha_; }

 private:
  double cl_ = 0.0;
  double alpha_ = 1.0;
};

enum class TimerPolicy : std::uint8_t { WaitAndGo, CancelAndGo };
enum class IntervalPolicy : std::uint8_t { Synchronized, Unsynchronized };

// The four reactive variants of the taxonomy, plus Off (plain 10 Hz
// beaconing with no congestion control).
struct DccVariant {
  bool off = true;
  TimerPolicy timer = TimerPolicy::WaitAndGo;
  IntervalPolicy interval = IntervalPolicy::Synchronized;

  // "off", "reactive1" (wait/sync), "reactive2" (cancel/sync),
  // "reactive3" (wait/unsync), "reactive4" (cancel/unsync)
  static DccVariant from_name(const std::string& name);
  std::string name() const;

  bool operator==(const DccVariant&) const = default;
};

// Literal reading of "upon reception of a new CBR value" re-triggers policy
// actions every notification; the default re-triggers only when the table
// interval changes.
enum class RetriggerMode : std::uint8_t { OnChange, EveryNotification };

// Per-vehicle CAM rate controller. Owns the generation timer; every CBR
// notification updates the load EWMA and, depending on variant and trigger
// mode, adjusts the interval per the timer/interval policies.
class DccController {
 public:
  using GenerateFn = std::function<void(NodeId, SimTime)>;
  // (node, t, cbr, cl, state row, setting interval, realized gap or -1)
  using TraceFn = std::function<void(NodeId, SimTime, double cbr, double cl,
                                     std::size_t state_row, std::int64_t setting_ms,
                                     std::int64_t realized_gap_us)>;

  DccController(EventQueue& engine, NodeId node, DccVariant variant, DccTable table,
                double alpha, RetriggerMode retrigger, std::mt19937_64 rng,
                GenerateFn generate);

  void set_trace(TraceFn trace) { trace_ = std::move(trace); }

  // Schedules the first CAM at a uniform start jitter in [0, interval).
  void start();

  void on_cbr_notification(double cbr, SimTime now);

  std::int64_t current_interval_ms() const { return current_interval_us_ / 1000; }
  std::int64_t current_interval_us() const { return current_interval_us_; }
  std::size_t current_state_row() const { return state_row_; }
  EventHandle pending_timer() const { return pending_; }
  double channel_load() const { return load_.value(); }

  static constexpr std::int64_t kOffIntervalMs = 100;  // CAM default Tx rate 10 Hz

 private:
  void on_timer_fire();
  void schedule_next(SimTime now);
  std::int64_t draw_interval_us();

  EventQueue& engine_;
  NodeId node_;
  DccVariant variant_;
  DccTable table_;
  ChannelLoad load_;
  RetriggerMode retrigger_;
  std::mt19937_64 rng_;
  GenerateFn generate_;
  TraceFn trace_;

  std::int64_t current_interval_us_ = 0;
  std::size_t state_row_ = 0;
  bool first_after_change_ = false;
  EventHandle pending_;
  SimTime last_generation_{-1};
};

}  // namespace camsim

#endif
