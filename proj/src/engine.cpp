#include "camsim/engine.hpp"

#include <stdexcept>
#include <utility>

namespace camsim {

EventHandle EventQueue::schedule(SimTime at, Event ev) {
  if (at < now_) throw std::invalid_argument("EventQueue::schedule: time is in the past");

  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  Slot& s = slots_[slot];
  s.live = true;
  s.ev = std::move(ev);
  heap_.push(HeapItem{at, next_seq_++, slot, s.generation});
  ++live_;
  return EventHandle{slot, s.generation};
}

bool EventQueue::cancel(EventHandle h) {
  if (!is_live(h)) return false;
  Slot& s = slots_[h.slot];
  s.live = false;
  s.ev.action = nullptr;
  --live_;
  return true;
}

bool EventQueue::is_live(EventHandle h) const {
  return h.slot < slots_.size() && slots_[h.slot].generation == h.generation &&
         slots_[h.slot].live;
}

void EventQueue::run_until(SimTime t_end) {
  if (t_end < now_) throw std::invalid_argument("EventQueue::run_until: time is in the past");
  while (!heap_.empty() && heap_.top().time <= t_end) {
    const HeapItem item = heap_.top();
    heap_.pop();
    Slot& s = slots_[item.slot];
    if (s.generation != item.generation) continue;  // slot already recycled
    if (!s.live) {
      // Tombstone of a cancelled event; reclaim the slot now.
      ++s.generation;
      free_slots_.push_back(item.slot);
      continue;
    }

    now_ = item.time;
    Event ev = std::move(s.ev);
    s.live = false;
    s.ev = Event{};
    ++s.generation;  // invalidates outstanding handles to this slot
    free_slots_.push_back(item.slot);
    --live_;
    ++dispatched_;
    if (ev.action) ev.action();
  }
  now_ = t_end;
}

}  // namespace camsim
