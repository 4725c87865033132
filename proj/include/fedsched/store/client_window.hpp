#pragma once

#include <list>
#include <mutex>
#include <string>
#include <unordered_map>

#include "fedsched/domain/client.hpp"
#include "fedsched/domain/query.hpp"
#include "fedsched/util/time.hpp"

namespace fedsched {

// Sliding-window client metadata store. Entries age out after `window` ms or
// when capacity is exceeded, oldest first. A client that checks in again
// replaces its previous entry (freshest state wins).
class ClientWindowStore {
 public:
  explicit ClientWindowStore(TimeMs window = 300'000, std::size_t capacity = 10'000);

  void insert(TimeMs now, ClientInfo info);
  // Drops entries older than now - window; returns how many were removed.
  std::size_t evict(TimeMs now);

  std::size_t size(TimeMs now);
  std::size_t count_satisfying(TimeMs now, const Constraint& c);
  // Fraction of window clients whose public attributes satisfy c; 0 when the
  // window is empty.
  double proportion(TimeMs now, const Constraint& c);
  std::size_t subset_size(TimeMs now, const Query& q);

  TimeMs window() const { return window_; }
  std::size_t capacity() const { return capacity_; }

 private:
  struct Entry {
    TimeMs arrival;
    ClientInfo info;
  };

  void evict_locked(TimeMs now);
  void drop_front_locked();

  TimeMs window_;
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::list<Entry> entries_;  // arrival order, oldest first
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

}  // namespace fedsched
