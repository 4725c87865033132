#include "fedsched/store/client_window.hpp"

namespace fedsched {

ClientWindowStore::ClientWindowStore(TimeMs window, std::size_t capacity)
    : window_(window), capacity_(capacity) {}

void ClientWindowStore::drop_front_locked() {
  index_.erase(entries_.front().info.client_id);
  entries_.pop_front();
}

void ClientWindowStore::evict_locked(TimeMs now) {
  while (!entries_.empty() && entries_.front().arrival < now - window_) drop_front_locked();
}

void ClientWindowStore::insert(TimeMs now, ClientInfo info) {
  std::lock_guard lock(mu_);
  auto it = index_.find(info.client_id);
  if (it != index_.end()) {
    entries_.erase(it->second);
    index_.erase(it);
  }
  entries_.push_back(Entry{now, std::move(info)});
  index_[entries_.back().info.client_id] = std::prev(entries_.end());
  while (entries_.size() > capacity_) drop_front_locked();
  evict_locked(now);
}

std::size_t ClientWindowStore::evict(TimeMs now) {
  std::lock_guard lock(mu_);
  std::size_t before = entries_.size();
  evict_locked(now);
  return before - entries_.size();
}

std::size_t ClientWindowStore::size(TimeMs now) {
  std::lock_guard lock(mu_);
  evict_locked(now);
  return entries_.size();
}

std::size_t ClientWindowStore::count_satisfying(TimeMs now, const Constraint& c) {
  std::lock_guard lock(mu_);
  evict_locked(now);
  std::size_t hits = 0;
  for (const auto& e : entries_)
    if (satisfies(e.info.public_attrs, c)) ++hits;
  return hits;
}

double ClientWindowStore::proportion(TimeMs now, const Constraint& c) {
  std::lock_guard lock(mu_);
  evict_locked(now);
  if (entries_.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& e : entries_)
    if (satisfies(e.info.public_attrs, c)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(entries_.size());
}

std::size_t ClientWindowStore::subset_size(TimeMs now, const Query& q) {
  std::lock_guard lock(mu_);
  evict_locked(now);
  std::size_t hits = 0;
  for (const auto& e : entries_)
    if (q.eval(e.info.public_attrs)) ++hits;
  return hits;
}

}  // namespace fedsched
