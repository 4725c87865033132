#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "fedsched/util/time.hpp"

namespace fedsched {

enum class EventKind {
  kClientArrive,
  kClientDepart,
  kCheckin,
  kAccept,
  kTaskDone,
  kTaskFail,
  kJobEvent,
  kFlushTick,
  kSchedTick,
};

// Deterministic discrete-event queue: events execute in (time, seq) order,
// seq assigned at scheduling time. Handlers may only schedule at the current
// time or later, which lands strictly after the running event.
class EventQueue {
 public:
  using Handler = std::function<void()>;

  void schedule(TimeMs t, EventKind kind, Handler fn) {
    assert(t >= now_);
    heap_.push(Item{t < now_ ? now_ : t, seq_++, kind, std::move(fn)});
  }

  bool empty() const { return heap_.empty(); }
  TimeMs now() const { return now_; }
  TimeMs next_time() const { return heap_.top().t; }
  EventKind next_kind() const { return heap_.top().kind; }
  std::size_t processed() const { return processed_; }

  void run_next() {
    Item item = heap_.top();
    heap_.pop();
    now_ = item.t;
    ++processed_;
    item.fn();
  }

 private:
  struct Item {
    TimeMs t;
    std::uint64_t seq;
    EventKind kind;
    Handler fn;
  };
  struct Later {
    bool operator()(const Item& a, const Item& b) const {
      return a.t != b.t ? a.t > b.t : a.seq > b.seq;
    }
  };

  std::priority_queue<Item, std::vector<Item>, Later> heap_;
  TimeMs now_ = 0;
  std::uint64_t seq_ = 0;
  std::size_t processed_ = 0;
};

}  // namespace fedsched
