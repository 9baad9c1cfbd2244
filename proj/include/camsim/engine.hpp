#ifndef CAMSIM_ENGINE_HPP
#define CAMSIM_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "camsim/time.hpp"

namespace camsim {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

enum class EventKind : std::uint8_t {
  CamTimerFire,
  TxStart,
  TxEnd,
  CbrWindowClose,
  BackoffSlot,
  MetricsBinClose,
  SimEnd,
};

struct Event {
  EventKind kind = EventKind::SimEnd;
  NodeId node = kNoNode;
  std::function<void()> action;
};

// Opaque reference to a scheduled event. Default-constructed handles are
// never live.
struct EventHandle {
  std::uint32_t slot = 0;
  std::uint32_t generation = 0;
};

// Deterministic discrete-event scheduler. Events dispatch in strict
// (time, insertion-sequence) order; cancellation tombstones the slot and the
// heap entry is discarded at pop.
class EventQueue {
 public:
  SimTime now() const { return now_; }

  // Rejects scheduling in the past; `at == now()` is allowed and dispatches
  // after everything already scheduled for that instant.
  EventHandle schedule(SimTime at, Event ev);

  // True iff the event was live and is now removed; false if it already
  // fired or was cancelled before.
  bool cancel(EventHandle h);

  bool is_live(EventHandle h) const;

  // Dispatches every live event with time <= t_end; afterwards now() == t_end.
  void run_until(SimTime t_end);

  std::size_t live_count() const { return live_; }
  std::uint64_t dispatched_count() const { return dispatched_; }

 private:
  struct Slot {
    std::uint32_t generation = 0;
    bool live = false;
    Event ev;
  };
  struct HeapItem {
    SimTime time;
    std::uint64_t seq;
    std::uint32_t slot;
    std::uint32_t generation;
    bool operator>(const HeapItem& o) const {
      if (time != o.time) return time > o.time;
      return seq > o.seq;
    }
  };

  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap_;
  std::vector<Slot> slots_;
  std::vector<std::uint32_t> free_slots_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  std::size_t live_ = 0;
  SimTime now_{0};
};

}  // namespace camsim

#endif
