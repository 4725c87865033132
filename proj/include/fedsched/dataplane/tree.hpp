#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fedsched/dataplane/reducer.hpp"
#include "fedsched/util/time.hpp"

namespace fedsched {

struct ExecPlan {
  std::string job_id;
  int round = 0;
  std::vector<std::uint8_t> payload;  // simulated model weights
};

enum class FetchError { kNotReady, kStaleRound };
enum class UploadStatus { kOk, kShapeMismatch, kLate };

// Hierarchical plan-distribution and result-aggregation tree. Leaves serve
// clients; plans pull down from the root with per-node TTL caching; partial
// aggregates flow up on flush. Node 0..n-1, parent pointers with -1 at the
// root.
struct TreeOptions {
  TimeMs plan_ttl = 60'000;
  TimeMs flush_period = 5'000;
  std::size_t cache_capacity = 64;  // plan entries per node, LRU beyond
};

class AggregationTree {
 public:
  AggregationTree(std::vector<int> parents, std::shared_ptr<Reducer> reducer,
                  TreeOptions opts = TreeOptions{});

  int node_count() const { return static_cast<int>(parents_.size()); }
  int root() const { return root_; }
  int parent(int node) const { return parents_[node]; }
  bool is_leaf(int node) const { return leaf_[node]; }
  const std::vector<int>& leaves() const { return leaves_; }
  int depth(int node) const { return depth_[node]; }
  TimeMs flush_period() const { return opts_.flush_period; }

  // Framework-facing surface (root side).
  void publish_plan(TimeMs now, ExecPlan plan);

  struct FetchOutcome {
    std::variant<ExecPlan, FetchError> result;
    int upstream_pulls = 0;  // parent requests triggered by this fetch
  };
  FetchOutcome fetch_plan(TimeMs now, int leaf, const std::string& job_id, int round);

  UploadStatus upload(TimeMs now, int leaf, const std::string& job_id, int round,
                      const Contribution& c);

  // Moves this node's partial aggregates one level up (into the master state
  // at the root).
  void flush(TimeMs now, int node);
  // Children-first cascade; afterwards every absorbed contribution has
  // reached the root.
  void flush_all(TimeMs now);
  // Final flush plus closing the round: later uploads are LATE.
  void close_round(TimeMs now, const std::string& job_id, int round);
  bool round_closed(const std::string& job_id, int round) const;

  struct RoundResult {
    std::optional<std::vector<double>> value;  // nullopt == NOT_READY
    long long count = 0;
  };
  RoundResult get_round_result(const std::string& job_id, int round) const;

  // Drops expired plan-cache entries everywhere.
  void sweep(TimeMs now);

  long long upstream_pulls(int node) const { return pulls_[node]; }
  long long total_upstream_pulls() const;
  long long cache_hits(int node) const { return hits_[node]; }
  long long late_drops() const { return late_drops_; }

  // Buffer inspection (debugging and tests).
  const AggState* peek_buffer(int node, const std::string& job_id, int round) const;
  const AggState* peek_master(const std::string& job_id, int round) const;

 private:
  using Key = std::pair<std::string, int>;

  struct CachedPlan {
    ExecPlan plan;
    TimeMs expiry = 0;
    std::uint64_t last_access = 0;
  };

  struct FetchInner {
    std::variant<ExecPlan, FetchError> result;
    int pulls = 0;
  };
  FetchInner fetch_at(TimeMs now, int node, const Key& key);
  void cache_insert(int node, const Key& key, ExecPlan plan, TimeMs now);

  std::vector<int> parents_;
  std::vector<bool> leaf_;
  std::vector<int> leaves_;
  std::vector<int> depth_;
  std::vector<int> flush_order_;  // deepest first
  int root_ = -1;
  std::shared_ptr<Reducer> reducer_;
  TreeOptions opts_;
  std::uint64_t access_clock_ = 0;

  std::vector<std::map<Key, CachedPlan>> plan_cache_;                  // per node
  std::vector<std::map<Key, std::unique_ptr<AggState>>> agg_buffer_;   // per node
  std::map<Key, std::unique_ptr<AggState>> master_;                    // at root
  std::map<Key, ExecPlan> published_;                                  // root authority
  std::map<std::string, int> latest_round_;
  std::map<Key, std::size_t> plan_dimension_;
  std::set<Key> closed_;

  std::vector<long long> pulls_;
  std::vector<long long> hits_;
  long long late_drops_ = 0;
};

}  // namespace fedsched
