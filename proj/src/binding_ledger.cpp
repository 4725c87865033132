#include "fedsched/control/binding_ledger.hpp"

namespace fedsched {

bool BindingLedger::has_bound(const std::string& job_id, int round,
                              const std::string& client_id) const {
  std::lock_guard lock(mu_);
  auto it = per_round_.find({job_id, round});
  return it != per_round_.end() && it->second.count(client_id) > 0;
}

bool BindingLedger::client_active(const std::string& client_id) const {
  std::lock_guard lock(mu_);
  return active_.count(client_id) > 0;
}

std::optional<BindingLedger::Entry> BindingLedger::active_entry(
    const std::string& client_id) const {
  std::lock_guard lock(mu_);
  auto it = active_.find(client_id);
  if (it == active_.end()) return std::nullopt;
  return entries_[it->second];
}

void BindingLedger::record_bound(TimeMs now, const std::string& client_id,
                                 const std::string& job_id, int round) {
  std::lock_guard lock(mu_);
  entries_.push_back(Entry{now, -1, client_id, job_id, round, Outcome::kActive});
  per_round_[{job_id, round}].insert(client_id);
  active_[client_id] = entries_.size() - 1;
}

void BindingLedger::record_done(TimeMs now, const std::string& client_id) {
  std::lock_guard lock(mu_);
  auto it = active_.find(client_id);
  if (it == active_.end()) return;
  entries_[it->second].outcome = Outcome::kDone;
  entries_[it->second].finished_at = now;
  active_.erase(it);
}

void BindingLedger::record_failed(TimeMs now, const std::string& client_id) {
  std::lock_guard lock(mu_);
  auto it = active_.find(client_id);
  if (it == active_.end()) return;
  entries_[it->second].outcome = Outcome::kFailed;
  entries_[it->second].finished_at = now;
  active_.erase(it);
}

int BindingLedger::round_bound_count(const std::string& job_id, int round) const {
  std::lock_guard lock(mu_);
  auto it = per_round_.find({job_id, round});
  return it == per_round_.end() ? 0 : static_cast<int>(it->second.size());
}

}  // namespace fedsched
