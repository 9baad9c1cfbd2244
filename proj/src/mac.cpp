#include "camsim/mac.hpp"

#include <cassert>

#include "camsim/rng.hpp"

namespace camsim {

Mac::Mac(EventQueue& engine, Medium& medium, NodeId node, MacParams params,
         std::mt19937_64 backoff_rng)
    : engine_(engine), medium_(medium), node_(node), params_(params), rng_(std::move(backoff_rng)) {
  medium_.set_listener(node_, this);
}

void Mac::enqueue_cam(std::uint64_t frame_id, int payload_bytes) {
  if (pending_) {
    ++drops_;
    if (on_drop_) on_drop_(node_, pending_->frame_id, engine_.now());
  }
  pending_ = PendingFrame{frame_id, payload_bytes};

  // Access already in progress continues unchanged for the fresh frame.
  if (state_ == State::Idle) begin_access();
}

void Mac::begin_access() {
  assert(pending_);
  if (!medium_.is_busy(node_)) {
    state_ = State::WaitInitialAifs;
    arm_timer(params_.aifs_us(), TimerTarget::InitialAifs);
  } else {
    draw_backoff_if_needed();
    state_ = State::WaitIdle;
  }
}

void Mac::on_channel_busy_changed(bool busy, SimTime t) {
  if (state_ == State::Idle || state_ == State::Transmitting) return;

  if (busy) {
    // A timer expiring exactly now is committed: the decision at an AIFS or
    // slot boundary depends only on the channel state strictly before it,
    // so stations reaching the boundary together transmit concurrently.
    if (timer_due_us_ == t.us && engine_.is_live(timer_)) return;
    switch (state_) {
      case State::WaitInitialAifs:
        cancel_timer();
        draw_backoff_if_needed();
        state_ = State::WaitIdle;
        break;
      case State::WaitAifs:
      case State::Backoff:
        cancel_timer();  // an interrupted slot does not decrement
        state_ = State::WaitIdle;
        break;
      default:
        break;
    }
  } else if (state_ == State::WaitIdle) {
    state_ = State::WaitAifs;
    arm_timer(params_.aifs_us(), TimerTarget::Aifs);
  }
}

void Mac::on_own_tx_end(SimTime) {
  assert(state_ == State::Transmitting);
  state_ = State::Idle;
  if (pending_) begin_access();
}

void Mac::on_timer() {
  switch (timer_target_) {
    case TimerTarget::InitialAifs: transmit_now(); break;
    case TimerTarget::Aifs: fire_aifs(); break;
    case TimerTarget::Slot: fire_slot(); break;
  }
}

void Mac::fire_aifs() {
  if (backoff_remaining_ <= 0) {
    transmit_now();
  } else if (medium_.is_busy(node_)) {
    // the channel turned busy exactly at the AIFS boundary; freeze before
    // the first backoff slot
    state_ = State::WaitIdle;
  } else {
    state_ = State::Backoff;
    arm_timer(params_.slot_us, TimerTarget::Slot);
  }
}

void Mac::fire_slot() {
  --backoff_remaining_;  // the slot just ended was idle throughout
  if (backoff_remaining_ == 0) {
    transmit_now();
  } else if (medium_.is_busy(node_)) {
    state_ = State::WaitIdle;
  } else {
    arm_timer(params_.slot_us, TimerTarget::Slot);
  }
}

void Mac::transmit_now() {
  assert(pending_);
  const PendingFrame frame = *pending_;
  pending_.reset();
  backoff_remaining_ = -1;
  state_ = State::Transmitting;
  medium_.begin_transmission(node_, frame.frame_id, frame.payload_bytes);
}

void Mac::draw_backoff_if_needed() {
  if (backoff_remaining_ < 0) {
    backoff_remaining_ = static_cast<int>(rng::uniform_closed(rng_, 0, params_.cw));
  }
}

void Mac::cancel_timer() { engine_.cancel(timer_); }

void Mac::arm_timer(std::int64_t delay_us, TimerTarget target) {
  timer_target_ = target;
  timer_due_us_ = engine_.now().us + delay_us;
  timer_ = engine_.schedule(SimTime{timer_due_us_},
                            Event{EventKind::BackoffSlot, node_, [this] { on_timer(); }});
}

}  // namespace camsim
