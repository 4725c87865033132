#include "fedsched/dataplane/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace fedsched {

AggregationTree::AggregationTree(std::vector<int> parents, std::shared_ptr<Reducer> reducer,
                                 TreeOptions opts)
    : parents_(std::move(parents)), reducer_(std::move(reducer)), opts_(opts) {
  const int n = static_cast<int>(parents_.size());
  if (n == 0) throw std::invalid_argument("tree needs at least one node");
  leaf_.assign(n, true);
  depth_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int p = parents_[i];
    if (p == -1) {
      if (root_ != -1) throw std::invalid_argument("multiple roots");
      root_ = i;
    } else if (p < 0 || p >= n || p == i) {
      throw std::invalid_argument("bad parent pointer");
    } else {
      leaf_[p] = false;
    }
  }
  if (root_ == -1) throw std::invalid_argument("no root");
  for (int i = 0; i < n; ++i) {
    int node = i, steps = 0;
    while (parents_[node] != -1) {
      node = parents_[node];
      if (++steps > n) throw std::invalid_argument("parent cycle");
    }
    depth_[i] = steps;
  }
  for (int i = 0; i < n; ++i)
    if (leaf_[i] && i != root_) leaves_.push_back(i);
  flush_order_.resize(n);
  for (int i = 0; i < n; ++i) flush_order_[i] = i;
  std::sort(flush_order_.begin(), flush_order_.end(),
            [this](int a, int b) { return depth_[a] != depth_[b] ? depth_[a] > depth_[b] : a < b; });
  plan_cache_.resize(n);
  agg_buffer_.resize(n);
  pulls_.assign(n, 0);
  hits_.assign(n, 0);
}

void AggregationTree::publish_plan(TimeMs now, ExecPlan plan) {
  (void)now;
  Key key{plan.job_id, plan.round};
  auto it = latest_round_.find(plan.job_id);
  if (it != latest_round_.end() && plan.round > it->second) {
    published_.erase(Key{plan.job_id, it->second});  // supersede previous round
  }
  if (it == latest_round_.end() || plan.round > it->second)
    latest_round_[plan.job_id] = plan.round;
  plan_dimension_[key] = plan.payload.size();
  published_[key] = std::move(plan);
}

void AggregationTree::cache_insert(int node, const Key& key, ExecPlan plan, TimeMs now) {
  auto& cache = plan_cache_[node];
  if (cache.size() >= opts_.cache_capacity && !cache.count(key)) {
    auto lru = cache.begin();
    for (auto it = cache.begin(); it != cache.end(); ++it)
      if (it->second.last_access < lru->second.last_access) lru = it;
    cache.erase(lru);
  }
  cache[key] = CachedPlan{std::move(plan), now + opts_.plan_ttl, ++access_clock_};
}

AggregationTree::FetchInner AggregationTree::fetch_at(TimeMs now, int node, const Key& key) {
  if (node == root_) {
    auto it = published_.find(key);
    if (it != published_.end()) return {it->second, 0};
    auto latest = latest_round_.find(key.first);
    if (latest != latest_round_.end() && latest->second > key.second)
      return {FetchError::kStaleRound, 0};
    return {FetchError::kNotReady, 0};
  }
  auto& cache = plan_cache_[node];
  auto it = cache.find(key);
  if (it != cache.end() && it->second.expiry >= now) {
    it->second.last_access = ++access_clock_;
    ++hits_[node];
    return {it->second.plan, 0};
  }
  if (it != cache.end()) cache.erase(it);  // expired
  ++pulls_[node];
  FetchInner up = fetch_at(now, parents_[node], key);
  up.pulls += 1;
  if (std::holds_alternative<ExecPlan>(up.result))
    cache_insert(node, key, std::get<ExecPlan>(up.result), now);
  return up;
}

AggregationTree::FetchOutcome AggregationTree::fetch_plan(TimeMs now, int leaf,
                                                          const std::string& job_id, int round) {
  FetchInner inner = fetch_at(now, leaf, Key{job_id, round});
  return FetchOutcome{std::move(inner.result), inner.pulls};
}

UploadStatus AggregationTree::upload(TimeMs now, int leaf, const std::string& job_id, int round,
                                     const Contribution& c) {
  (void)now;
  Key key{job_id, round};
  if (closed_.count(key)) {
    ++late_drops_;
    return UploadStatus::kLate;
  }
  auto dim = plan_dimension_.find(key);
  if (dim != plan_dimension_.end() && c.update.size() != dim->second)
    return UploadStatus::kShapeMismatch;
  auto& buffer = agg_buffer_[leaf];
  auto it = buffer.find(key);
  if (it == buffer.end()) it = buffer.emplace(key, reducer_->init()).first;
  if (!reducer_->absorb(*it->second, c)) return UploadStatus::kShapeMismatch;
  return UploadStatus::kOk;
}

void AggregationTree::flush(TimeMs now, int node) {
  (void)now;
  auto& buffer = agg_buffer_[node];
  if (buffer.empty()) return;  // no message when there is nothing to send
  auto drain = std::move(buffer);
  buffer.clear();
  for (auto& [key, state] : drain) {
    if (closed_.count(key)) {
      late_drops_ += reducer_->count(*state);
      continue;
    }
    auto& target = node == root_ ? master_ : agg_buffer_[parents_[node]];
    auto it = target.find(key);
    if (it == target.end()) {
      target.emplace(key, std::move(state));
    } else {
      reducer_->merge(*it->second, *state);
    }
  }
}

void AggregationTree::flush_all(TimeMs now) {
  for (int node : flush_order_) flush(now, node);
}

void AggregationTree::close_round(TimeMs now, const std::string& job_id, int round) {
  flush_all(now);
  closed_.insert(Key{job_id, round});
}

bool AggregationTree::round_closed(const std::string& job_id, int round) const {
  return closed_.count(Key{job_id, round}) > 0;
}

AggregationTree::RoundResult AggregationTree::get_round_result(const std::string& job_id,
                                                               int round) const {
  Key key{job_id, round};
  auto it = master_.find(key);
  if (it == master_.end()) return RoundResult{std::nullopt, 0};
  RoundResult out;
  out.count = reducer_->count(*it->second);
  if (!closed_.count(key)) return RoundResult{std::nullopt, out.count};
  out.value = reducer_->finalize(*it->second);
  return out;
}

void AggregationTree::sweep(TimeMs now) {
  for (auto& cache : plan_cache_) {
    for (auto it = cache.begin(); it != cache.end();) {
      if (it->second.expiry < now) {
        it = cache.erase(it);
      } else {
        ++it;
      }
    }
  }
}

long long AggregationTree::total_upstream_pulls() const {
  long long total = 0;
  for (long long p : pulls_) total += p;
  return total;
}

const AggState* AggregationTree::peek_buffer(int node, const std::string& job_id,
                                             int round) const {
  auto it = agg_buffer_[node].find(Key{job_id, round});
  return it == agg_buffer_[node].end() ? nullptr : it->second.get();
}

const AggState* AggregationTree::peek_master(const std::string& job_id, int round) const {
  auto it = master_.find(Key{job_id, round});
  return it == master_.end() ? nullptr : it->second.get();
}

}  // namespace fedsched
