#ifndef CAMSIM_MEDIUM_HPP
#define CAMSIM_MEDIUM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "camsim/engine.hpp"
#include "camsim/phy.hpp"
#include "camsim/scenario.hpp"

namespace camsim {

// One on-air frame's outcome at one receiver. Exactly one is produced per
// (transmitted frame, other node) pair, at frame end.
struct Disposition {
  std::uint64_t frame_id = 0;
  NodeId tx_node = kNoNode;
  NodeId rx_node = kNoNode;
  double distance_m = 0.0;
  RxOutcome outcome = RxOutcome::Received;
  SimTime at;
};

// Pure decision rule behind the per-receiver outcome: half-duplex beats the
// sensitivity gate, which beats the worst-instant SINR test.
RxOutcome reception_outcome(double signal_mw, double max_interference_mw, double noise_mw,
                            double sinr_threshold_linear, double decode_threshold_mw,
                            bool rx_was_transmitting);

// Shared broadcast channel: tracks ongoing transmissions, per-node energy
// aggregates, busy/idle state (own transmission, or linear power sum of
// foreign transmissions at or above the node's ED threshold), per-node CBR
// monitors, and per-receiver frame outcomes.
class Medium {
 public:
  // Channel-state consumer (the MAC of a transmitting-capable node).
  struct Listener {
    virtual ~Listener() = default;
    virtual void on_channel_busy_changed(bool busy, SimTime t) = 0;
    virtual void on_own_tx_end(SimTime t) = 0;
  };

  using CbrCallback = std::function<void(NodeId, double cbr, SimTime)>;
  using DispositionSink = std::function<void(const Disposition&)>;
  using TxStartCallback = std::function<void(const Transmission&)>;
  using ForeignBusyProbe = std::function<void(NodeId, bool foreign_busy, SimTime)>;

  Medium(EventQueue& engine, const Scenario& scenario, const RadioParams& radio,
         std::int64_t cbr_window_us, bool rsu_monitors);

  void set_listener(NodeId node, Listener* listener);
  void set_cbr_callback(CbrCallback cb) { on_cbr_ = std::move(cb); }
  void set_disposition_sink(DispositionSink sink) { on_disposition_ = std::move(sink); }
  void set_tx_start_callback(TxStartCallback cb) { on_tx_start_ = std::move(cb); }
  void set_foreign_busy_probe(ForeignBusyProbe probe) { foreign_probe_ = std::move(probe); }

  // Draws monitor phases and schedules the first window close per monitored
  // node. Call once, before the engine runs.
  void start();

  void begin_transmission(NodeId node, std::uint64_t frame_id, int payload_bytes);

  bool is_busy(NodeId node) const { return busy_[node]; }
  bool is_transmitting(NodeId node) const { return own_tx_[node]; }
  double rx_power_mw(NodeId tx, NodeId rx) const { return rxp_mw_[idx(tx, rx)]; }
  double distance_m(NodeId a, NodeId b) const { return dist_m_[idx(a, b)]; }
  double last_cbr(NodeId node) const { return monitors_[node].last_cbr(); }
  bool has_monitor(NodeId node) const { return monitored_[node]; }
  int node_count() const { return n_; }
  const RadioParams& radio() const { return radio_; }
  std::int64_t frame_airtime_us(int payload_bytes) const;

 private:
  struct ActiveTx {
    Transmission txm;
    std::vector<double> max_interf_mw;     // per receiver, worst instant
    std::vector<std::uint8_t> rx_was_txing;  // per receiver half-duplex flag
  };

  std::size_t idx(NodeId a, NodeId b) const {
    return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b);
  }
  void update_aggregates(SimTime t);
  void end_transmission(std::uint64_t frame_id);
  void close_cbr_window(NodeId node);

  EventQueue& engine_;
  const Scenario& scenario_;
  RadioParams radio_;
  int n_ = 0;
  std::int64_t cbr_window_us_ = 100'000;
  bool rsu_monitors_ = true;

  std::vector<double> rxp_mw_;   // [tx * n + rx], 0 on the diagonal
  std::vector<double> dist_m_;   // [a * n + b]
  std::vector<double> sense_thr_mw_;
  std::vector<double> decode_thr_mw_;
  double noise_mw_ = 0.0;
  double sinr_lin_ = 0.0;

  std::vector<ActiveTx> active_;  // insertion (frame id) order
  std::vector<std::uint8_t> own_tx_;
  std::vector<double> foreign_mw_;
  std::vector<std::uint8_t> busy_;
  std::vector<std::int64_t> busy_since_us_;
  std::vector<std::uint8_t> foreign_busy_;
  std::vector<std::uint8_t> monitored_;
  std::vector<CbrMonitor> monitors_;
  std::vector<Listener*> listeners_;

  CbrCallback on_cbr_;
  DispositionSink on_disposition_;
  TxStartCallback on_tx_start_;
  ForeignBusyProbe foreign_probe_;
};

}  // namespace camsim

#endif
