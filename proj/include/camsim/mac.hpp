#ifndef CAMSIM_MAC_HPP
#define CAMSIM_MAC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "camsim/engine.hpp"
#include "camsim/medium.hpp"

namespace camsim {

struct MacParams {
  std::int64_t slot_us = 13;
  std::int64_t sifs_us = 32;
  int aifsn = 6;
  int cw = 15;  // fixed contention window; broadcast frames are never retried

  std::int64_t aifs_us() const { return sifs_us + aifsn * slot_us; }
};

// Simplified CSMA/CA broadcast MAC. Single-depth CAM queue: enqueueing onto
// a pending frame replaces it (stale beacons are dropped, not delayed).
// Channel access: an uninterrupted idle AIFS leads straight to transmission
// when no backoff is owed; any deferral draws a backoff in [0, cw] that
// counts down one idle slot at a time and freezes while busy. Exactly one
// transmission attempt per frame, no ACKs.
//
// A timer due exactly at the instant the channel turns busy is committed:
// the decision at a slot/AIFS boundary depends only on the channel state
// strictly before it, so stations reaching zero at the same boundary
// transmit concurrently (and collide) instead of sensing each other.
class Mac final : public Medium::Listener {
 public:
  // Called when a pending frame is replaced before transmission.
  using DropCallback = std::function<void(NodeId, std::uint64_t frame_id, SimTime)>;

  Mac(EventQueue& engine, Medium& medium, NodeId node, MacParams params,
      std::mt19937_64 backoff_rng);

  void set_drop_callback(DropCallback cb) { on_drop_ = std::move(cb); }

  void enqueue_cam(std::uint64_t frame_id, int payload_bytes);

  std::int64_t drops_count() const { return drops_; }
  bool has_pending_frame() const { return pending_.has_value(); }
  int backoff_remaining() const { return backoff_remaining_; }

  // Medium::Listener
  void on_channel_busy_changed(bool busy, SimTime t) override;
  void on_own_tx_end(SimTime t) override;

 private:
  enum class State : std::uint8_t {
    Idle,             // nothing queued, not transmitting
    WaitInitialAifs,  // first access attempt on a channel idle since enqueue
    WaitIdle,         // deferred, waiting for the channel to go idle
    WaitAifs,         // idle began, waiting out AIFS before backoff/transmit
    Backoff,          // counting down idle slots
    Transmitting,
  };

  struct PendingFrame {
    std::uint64_t frame_id;
    int payload_bytes;
  };

  enum class TimerTarget : std::uint8_t { InitialAifs, Aifs, Slot };

  void begin_access();
  void cancel_timer();
  void arm_timer(std::int64_t delay_us, TimerTarget target);
  void on_timer();
  void fire_aifs();
  void fire_slot();
  void transmit_now();
  void draw_backoff_if_needed();

  EventQueue& engine_;
  Medium& medium_;
  NodeId node_;
  MacParams params_;
  std::mt19937_64 rng_;

  State state_ = State::Idle;
  std::optional<PendingFrame> pending_;
  int backoff_remaining_ = -1;  // -1: no backoff owed
  TimerTarget timer_target_ = TimerTarget::InitialAifs;
  EventHandle timer_;
  std::int64_t timer_due_us_ = -1;
  std::int64_t drops_ = 0;
  DropCallback on_drop_;
};

}  // namespace camsim

#endif
