#include "camsim/dcc.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "camsim/rng.hpp"

namespace camsim {

DccTable DccTable::standard() {
  return DccTable({
      {"Relaxed", 0.00, 0.19, 60},
      {"Active_1", 0.19, 0.27, 100},
      {"Active_2", 0.27, 0.35, 180},
      {"Active_3", 0.35, 0.43, 260},
      {"Active_4", 0.43, 0.51, 340},
      {"Active_5", 0.51, 0.59, 420},
      {"Restricted", 0.59, 1.00, 460},
  });
}

DccTable::DccTable(std::vector<DccTableRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("DccTable: empty");
  if (rows_.front().cl_lower != 0.0 || rows_.back().cl_upper != 1.0)
    throw std::invalid_argument("DccTable: rows must cover [0, 1]");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].cl_lower >= rows_[i].cl_upper)
      throw std::invalid_argument("DccTable: empty row band");
    if (i > 0) {
      if (rows_[i].cl_lower != rows_[i - 1].cl_upper)
        throw std::invalid_argument("DccTable: rows must partition [0, 1] without gaps");
      if (rows_[i].t_off_ms <= rows_[i - 1].t_off_ms)
        throw std::invalid_argument("DccTable: t_off must be strictly increasing");
    }
  }
}

std::size_t DccTable::lookup_row(double cl) const {
  if (!(cl >= 0.0 && cl <= 1.0)) throw std::invalid_argument("DccTable: cl outside [0, 1]");
  for (std::size_t i = 0; i + 1 < rows_.size(); ++i) {
    if (cl < rows_[i].cl_upper) return i;
  }
  return rows_.size() - 1;  // last row includes cl == 1
}

std::int64_t DccTable::lookup_interval_ms(double cl) const { return rows_[lookup_row(cl)].t_off_ms; }

ChannelLoad::ChannelLoad(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("ChannelLoad: alpha outside [0, 1]");
}

double ChannelLoad::update(double cbr) {
  if (!(cbr >= 0.0 && cbr <= 1.0))
    throw std::invalid_argument("ChannelLoad: cbr outside [0, 1]");
  cl_ = (1.0 - alpha_) * cl_ + alpha_ * cbr;
  return cl_;
}

DccVariant DccVariant::from_name(const std::string& name) {
  if (name == "off") return DccVariant{true, TimerPolicy::WaitAndGo, IntervalPolicy::Synchronized};
  if (name == "reactive1")
    return DccVariant{false, TimerPolicy::WaitAndGo, IntervalPolicy::Synchronized};
  if (name == "reactive2")
    return DccVariant{false, TimerPolicy::CancelAndGo, IntervalPolicy::Synchronized};
  if (name == "reactive3")
    return DccVariant{false, TimerPolicy::WaitAndGo, IntervalPolicy::Unsynchronized};
  if (name == "reactive4")
    return DccVariant{false, TimerPolicy::CancelAndGo, IntervalPolicy::Unsynchronized};
  throw std::invalid_argument("unknown DCC variant: " + name);
}

std::string DccVariant::name() const {
  if (off) return "off";
  if (timer == TimerPolicy::WaitAndGo)
    return interval == IntervalPolicy::Synchronized ? "reactive1" : "reactive3";
  return interval == IntervalPolicy::Synchronized ? "reactive2" : "reactive4";
}

DccController::DccController(EventQueue& engine, NodeId node, DccVariant variant, DccTable table,
                             double alpha, RetriggerMode retrigger, std::mt19937_64 rng,
                             GenerateFn generate)
    : engine_(engine),
      node_(node),
      variant_(variant),
      table_(std::move(table)),
      load_(alpha),
      retrigger_(retrigger),
      rng_(std::move(rng)),
      generate_(std::move(generate)) {
  state_row_ = table_.lookup_row(0.0);
  current_interval_us_ =
      variant_.off ? ms_to_us(kOffIntervalMs) : ms_to_us(table_.rows()[state_row_].t_off_ms);
}

void DccController::start() {
  const std::int64_t jitter = static_cast<std::int64_t>(
      rng::uniform_below(rng_, static_cast<std::uint64_t>(current_interval_us_)));
  pending_ = engine_.schedule(engine_.now() + jitter,
                              Event{EventKind::CamTimerFire, node_, [this] { on_timer_fire(); }});
}

void DccController::on_cbr_notification(double cbr, SimTime now) {
  const double cl = load_.update(cbr);

  if (!variant_.off) {
    const std::size_t row = table_.lookup_row(cl);
    const std::int64_t new_interval_us = ms_to_us(table_.rows()[row].t_off_ms);
    const bool changed = new_interval_us != current_interval_us_;
    state_row_ = row;

    if (changed || retrigger_ == RetriggerMode::EveryNotification) {
      current_interval_us_ = new_interval_us;
      if (variant_.interval == IntervalPolicy::Unsynchronized) first_after_change_ = true;
      if (variant_.timer == TimerPolicy::CancelAndGo) {
        engine_.cancel(pending_);
        schedule_next(now);
      }
      // WaitAndGo leaves the pending timer untouched; the new interval takes
      // effect when it fires.
    }
  }

  if (trace_)
    trace_(node_, now, cbr, cl, state_row_, current_interval_us_ / 1000, -1);
}

void DccController::on_timer_fire() {
  const SimTime now = engine_.now();
  generate_(node_, now);
  if (trace_) {
    const std::int64_t gap = last_generation_.us >= 0 ? now - last_generation_ : -1;
    trace_(node_, now, -1.0, load_.value(), state_row_, current_interval_us_ / 1000, gap);
  }
  last_generation_ = now;
  schedule_next(now);
}

void DccController::schedule_next(SimTime now) {
  pending_ = engine_.schedule(now + draw_interval_us(),
                              Event{EventKind::CamTimerFire, node_, [this] { on_timer_fire(); }});
}

std::int64_t DccController::draw_interval_us() {
  if (variant_.off) return ms_to_us(kOffIntervalMs);
  if (variant_.interval == IntervalPolicy::Unsynchronized && first_after_change_) {
    first_after_change_ = false;
    // First packet after a change: uniform on the closed range [0, interval].
    return rng::uniform_closed(rng_, 0, current_interval_us_);
  }
  return current_interval_us_;
}

}  // namespace camsim
