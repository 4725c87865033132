#pragma once

#include <deque>
#include <optional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>

#include "fedsched/util/time.hpp"

namespace fedsched {

// Authoritative record of committed client-job bindings and their outcomes.
// Shared by every binding path (managed and baseline) so the same rules hold
// everywhere: one active task per client, one binding per client per round.
class BindingLedger {
 public:
  enum class Outcome { kActive, kDone, kFailed };

  struct Entry {
    TimeMs bound_at = 0;
    TimeMs finished_at = -1;
    std::string client_id;
    std::string job_id;
    int round = 0;
    Outcome outcome = Outcome::kActive;
  };

  bool has_bound(const std::string& job_id, int round, const std::string& client_id) const;
  bool client_active(const std::string& client_id) const;
  // The client's in-flight binding, if any.
  std::optional<Entry> active_entry(const std::string& client_id) const;

  void record_bound(TimeMs now, const std::string& client_id, const std::string& job_id,
                    int round);
  void record_done(TimeMs now, const std::string& client_id);
  void record_failed(TimeMs now, const std::string& client_id);

  const std::deque<Entry>& entries() const { return entries_; }
  long long bound_count() const { return static_cast<long long>(entries_.size()); }
  int round_bound_count(const std::string& job_id, int round) const;

 private:
  mutable std::mutex mu_;
  std::deque<Entry> entries_;
  std::map<std::pair<std::string, int>, std::set<std::string>> per_round_;
  std::unordered_map<std::string, std::size_t> active_;  // client -> entry index
};

}  // namespace fedsched
