#include "fedsched/store/client_cache.hpp"

namespace fedsched {

void ClientCache::expire_locked(TimeMs now, std::vector<std::string>* out) {
  for (auto it = fifo_.begin(); it != fifo_.end();) {
    if (it->expiry < now) {
      if (out) out->push_back(it->client_id);
      index_.erase(it->client_id);
      it = fifo_.erase(it);
    } else {
      ++it;
    }
  }
}

void ClientCache::push(TimeMs now, const std::string& client_id,
                       const AttributeMap& public_attrs) {
  std::lock_guard lock(mu_);
  auto it = index_.find(client_id);
  if (it != index_.end()) {
    fifo_.erase(it->second);
    index_.erase(it);
  }
  fifo_.push_back(CachedClient{client_id, public_attrs, now + ttl_});
  index_[client_id] = std::prev(fifo_.end());
}

std::vector<CachedClient> ClientCache::take_matching(TimeMs now, const Query& q, std::size_t k) {
  std::lock_guard lock(mu_);
  expire_locked(now, nullptr);
  std::vector<CachedClient> taken;
  for (auto it = fifo_.begin(); it != fifo_.end() && taken.size() < k;) {
    if (q.eval(it->public_attrs)) {
      taken.push_back(*it);
      index_.erase(it->client_id);
      it = fifo_.erase(it);
    } else {
      ++it;
    }
  }
  return taken;
}

std::vector<std::string> ClientCache::expire(TimeMs now) {
  std::lock_guard lock(mu_);
  std::vector<std::string> expired;
  expire_locked(now, &expired);
  return expired;
}

std::size_t ClientCache::size(TimeMs now) {
  std::lock_guard lock(mu_);
  expire_locked(now, nullptr);
  return fifo_.size();
}

bool ClientCache::contains(const std::string& client_id) const {
  std::lock_guard lock(mu_);
  return index_.count(client_id) > 0;
}

}  // namespace fedsched
