#include "camsim/medium.hpp"

#include <cassert>
#include <stdexcept>

#include "camsim/rng.hpp"

namespace camsim {

RxOutcome reception_outcome(double signal_mw, double max_interference_mw, double noise_mw,
                            double sinr_threshold_linear, double decode_threshold_mw,
                            bool rx_was_transmitting) {
  if (rx_was_transmitting) return RxOutcome::LostHalfDuplex;
  if (signal_mw < decode_threshold_mw) return RxOutcome::LostBelowSensitivity;
  if (signal_mw < sinr_threshold_linear * (noise_mw + max_interference_mw))
    return RxOutcome::LostCollision;
  return RxOutcome::Received;
}

Medium::Medium(EventQueue& engine, const Scenario& scenario, const RadioParams& radio,
               std::int64_t cbr_window_us, bool rsu_monitors)
    : engine_(engine),
      scenario_(scenario),
      radio_(radio),
      n_(static_cast<int>(scenario.nodes.size())),
      cbr_window_us_(cbr_window_us),
      rsu_monitors_(rsu_monitors) {
  if (cbr_window_us <= 0) throw std::invalid_argument("Medium: CBR window must be positive");

  rxp_mw_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  dist_m_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (NodeId a = 0; a < n_; ++a) {
    for (NodeId b = 0; b < n_; ++b) {
      if (a == b) continue;
      const double d = pair_distance(scenario.nodes[a], scenario.nodes[b]);
      dist_m_[idx(a, b)] = d;
      rxp_mw_[idx(a, b)] = dbm_to_mw(rx_power_dbm(radio_, d));
    }
  }

  sense_thr_mw_.resize(n_);
  decode_thr_mw_.resize(n_);
  for (NodeId i = 0; i < n_; ++i) {
    const double offset = scenario.nodes[i].sensitivity_offset_db;
    sense_thr_mw_[i] = dbm_to_mw(radio_.ed_threshold_dbm + offset);
    decode_thr_mw_[i] =
        dbm_to_mw(radio_.ed_threshold_dbm + (radio_.offset_applies_to_decode ? offset : 0.0));
  }
  noise_mw_ = dbm_to_mw(radio_.noise_floor_dbm);
  sinr_lin_ = dbm_to_mw(radio_.sinr_threshold_db);

  own_tx_.assign(n_, 0);
  foreign_mw_.assign(n_, 0.0);
  busy_.assign(n_, 0);
  busy_since_us_.assign(n_, 0);
  foreign_busy_.assign(n_, 0);
  listeners_.assign(n_, nullptr);

  monitored_.assign(n_, 0);
  monitors_.resize(n_);
  for (NodeId i = 0; i < n_; ++i) {
    if (scenario_.nodes[i].role != NodeRole::Vehicle && !rsu_monitors_) continue;
    auto gen = rng::make_stream(scenario_.seed, i, rng::Stream::CbrPhase);
    const std::int64_t phase = static_cast<std::int64_t>(
        rng::uniform_below(gen, static_cast<std::uint64_t>(cbr_window_us_)));
    monitored_[i] = 1;
    monitors_[i] = CbrMonitor(cbr_window_us_, phase);
  }
}

void Medium::set_listener(NodeId node, Listener* listener) { listeners_[node] = listener; }

std::int64_t Medium::frame_airtime_us(int payload_bytes) const {
  return airtime_us(radio_, payload_bytes + radio_.frame_overhead_bytes);
}

void Medium::start() {
  for (NodeId i = 0; i < n_; ++i) {
    const bool monitor = scenario_.nodes[i].role == NodeRole::Vehicle || rsu_monitors_;
    if (!monitor) continue;
    auto gen = rng::make_stream(scenario_.seed, i, rng::Stream::CbrPhase);
    const std::int64_t phase =
        static_cast<std::int64_t>(rng::uniform_below(gen, static_cast<std::uint64_t>(cbr_window_us_)));
    monitored_[i] = 1;
    monitors_[i] = CbrMonitor(cbr_window_us_, phase);
    engine_.schedule(SimTime{phase + cbr_window_us_},
                     Event{EventKind::CbrWindowClose, i, [this, i] { close_cbr_window(i); }});
  }
}

void Medium::close_cbr_window(NodeId node) {
  const std::int64_t close_us = engine_.now().us;
  std::optional<std::int64_t> open_since;
  if (busy_[node]) open_since = busy_since_us_[node];
  const double cbr = monitors_[node].close(close_us, open_since);
  if (on_cbr_) on_cbr_(node, cbr, SimTime{close_us});
  engine_.schedule(SimTime{close_us + cbr_window_us_},
                   Event{EventKind::CbrWindowClose, node, [this, node] { close_cbr_window(node); }});
}

void Medium::update_aggregates(SimTime t) {
  const std::size_t n_active = active_.size();
  for (NodeId n = 0; n < n_; ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_active; ++i) {
      const ActiveTx& a = active_[i];
      if (a.txm.tx_node != n) sum += rxp_mw_[idx(a.txm.tx_node, n)];
    }
    foreign_mw_[n] = sum;
    if (!own_tx_[n]) {
      for (std::size_t i = 0; i < n_active; ++i) {
        ActiveTx& a = active_[i];
        if (a.txm.tx_node == n) continue;
        const double interf = sum - rxp_mw_[idx(a.txm.tx_node, n)];
        if (interf > a.max_interf_mw[n]) a.max_interf_mw[n] = interf;
      }
    }

    const bool foreign_busy = sum >= sense_thr_mw_[n];
    if (foreign_probe_ && foreign_busy != static_cast<bool>(foreign_busy_[n])) {
      foreign_probe_(n, foreign_busy, t);
    }
    foreign_busy_[n] = foreign_busy;

    const bool busy = own_tx_[n] || foreign_busy;
    if (busy != static_cast<bool>(busy_[n])) {
      if (busy) {
        busy_since_us_[n] = t.us;
      } else if (monitored_[n]) {
        monitors_[n].add_busy_interval(busy_since_us_[n], t.us);
      }
      busy_[n] = busy;
      if (listeners_[n]) listeners_[n]->on_channel_busy_changed(busy, t);
    }
  }
}

void Medium::begin_transmission(NodeId node, std::uint64_t frame_id, int payload_bytes) {
  assert(!own_tx_[node]);
  const SimTime start = engine_.now();
  const SimTime end = start + frame_airtime_us(payload_bytes);

  // Receivers transmitting at any instant of the frame lose it half-duplex;
  // flag both directions of the overlap.
  for (ActiveTx& a : active_) a.rx_was_txing[node] = 1;

  ActiveTx tx;
  tx.txm = Transmission{frame_id, node, start, end, radio_.tx_power_dbm, payload_bytes};
  tx.max_interf_mw.assign(n_, 0.0);
  tx.rx_was_txing.assign(own_tx_.begin(), own_tx_.end());
  active_.push_back(std::move(tx));

  own_tx_[node] = 1;
  update_aggregates(start);
  if (on_tx_start_) on_tx_start_(active_.back().txm);

  engine_.schedule(end, Event{EventKind::TxEnd, node,
                              [this, frame_id] { end_transmission(frame_id); }});
}

void Medium::end_transmission(std::uint64_t frame_id) {
  std::size_t pos = active_.size();
  for (std::size_t i = 0; i < active_.size(); ++i) {
    if (active_[i].txm.frame_id == frame_id) {
      pos = i;
      break;
    }
  }
  assert(pos < active_.size());
  ActiveTx done = std::move(active_[pos]);
  active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(pos));

  const NodeId tx = done.txm.tx_node;
  const SimTime t = done.txm.end;
  own_tx_[tx] = 0;
  update_aggregates(t);

  if (on_disposition_) {
    for (NodeId rx = 0; rx < n_; ++rx) {
      if (rx == tx) continue;
      const RxOutcome outcome =
          reception_outcome(rxp_mw_[idx(tx, rx)], done.max_interf_mw[rx], noise_mw_, sinr_lin_,
                            decode_thr_mw_[rx], done.rx_was_txing[rx] != 0);
      on_disposition_(Disposition{frame_id, tx, rx, dist_m_[idx(tx, rx)], outcome, t});
    }
  }
  if (listeners_[tx]) listeners_[tx]->on_own_tx_end(t);
}

}  // namespace camsim
