#pragma once

#include <list>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fedsched/domain/attributes.hpp"
#include "fedsched/domain/query.hpp"
#include "fedsched/util/time.hpp"

namespace fedsched {

struct CachedClient {
  std::string client_id;
  AttributeMap public_attrs;
  TimeMs expiry = 0;
};

// Short-lived cache of available clients used by small-batch scheduling.
// FIFO by push time; a client appears at most once (re-push refreshes); a
// selected client is removed before the binding completes; expired entries
// are never handed out.
class ClientCache {
 public:
  explicit ClientCache(TimeMs ttl = 30'000) : ttl_(ttl) {}

  void push(TimeMs now, const std::string& client_id, const AttributeMap& public_attrs);

  // Oldest k entries matching q, removed atomically.
  std::vector<CachedClient> take_matching(TimeMs now, const Query& q, std::size_t k);

  // Removes entries past expiry and returns their ids so waiting clients can
  // be told there is no task.
  std::vector<std::string> expire(TimeMs now);

  std::size_t size(TimeMs now);
  bool contains(const std::string& client_id) const;
  TimeMs ttl() const { return ttl_; }

 private:
  void expire_locked(TimeMs now, std::vector<std::string>* out);

  TimeMs ttl_;
  mutable std::mutex mu_;
  std::list<CachedClient> fifo_;  // oldest first
  std::unordered_map<std::string, std::list<CachedClient>::iterator> index_;
};

}  // namespace fedsched
