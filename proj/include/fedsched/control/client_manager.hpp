#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fedsched/control/binding_ledger.hpp"
#include "fedsched/control/job_manager.hpp"
#include "fedsched/control/scheduler.hpp"
#include "fedsched/store/client_cache.hpp"
#include "fedsched/store/client_window.hpp"
#include "fedsched/store/job_store.hpp"

namespace fedsched {

// Task metadata shipped to a client; the private constraint rides along for
// the client-local binding decision.
struct TaskOffer {
  std::string job_id;
  std::string job_ip;
  int port = 0;
  int round = 0;
  Constraint private_constraint;
  double workload_per_client = 1.0;
};

struct CheckInResponse {
  std::vector<TaskOffer> offers;  // distinct jobs, descending priority
  bool deferred = false;  // small-batch: client parked in the cache, offers follow
};

enum class BindStatus { kBound, kRejected };

struct BindResult {
  BindStatus status = BindStatus::kRejected;
  std::string job_ip;
  int port = 0;
};

// Deterministic client-id -> shard mapping for the load balancer.
class ShardRouter {
 public:
  explicit ShardRouter(std::size_t shards) : shards_(shards == 0 ? 1 : shards) {}
  std::size_t shards() const { return shards_; }
  std::size_t route(const std::string& client_id) const;

 private:
  std::size_t shards_;
};

struct ClientManagerConfig {
  std::size_t offers_per_checkin = 3;
  TimeMs offer_validity = 10'000;
  TimeMs window = 300'000;
  std::size_t window_capacity = 10'000;
  TimeMs cache_ttl = 30'000;
  // batch serving offers up to overshoot x remaining demand per member; the
  // allocation counter resolves the races, clients declining privately just
  // cost an offer
  int offer_overshoot = 3;
};

// Binding layer shard: selects candidate tasks per published scores or
// partitions and commits bindings through the job store's atomic allocation
// counter. The window and cache are this shard's slice of the client
// metadata stores.
class ClientManager {
 public:
  ClientManager(int shard_index, JobStore& jobs, JobManager& job_manager, Scheduler* scheduler,
                BindingLedger& ledger, ClientWindowStore& window, ClientCache& cache,
                ClientManagerConfig cfg = {});

  CheckInResponse client_checkin(const ClientInfo& info, TimeMs now);
  BindResult client_accept(const std::string& client_id, const std::string& job_id, TimeMs now);
  // CLIENT_PING: "active" while the client holds a task, else "none".
  std::string task_status(const std::string& client_id) const;

  struct ServeOutcome {
    std::vector<std::pair<std::string, TaskOffer>> deliveries;  // one per client
    std::vector<std::string> no_task;  // taken from the cache but not placeable
  };
  // Small-batch path: drain matching cached clients for the current partition.
  ServeOutcome serve_partition(TimeMs now);
  // Expired cache entries; these clients get told there is no task.
  std::vector<std::string> expire_cache(TimeMs now);

  ClientWindowStore& window() { return window_; }
  ClientCache& cache() { return cache_; }
  int shard_index() const { return shard_index_; }

 private:
  static TaskOffer offer_from(const JobRecord& rec);
  std::vector<TaskOffer> online_offers(const ClientInfo& info, TimeMs now);
  void remember_offer(const std::string& client_id, const TaskOffer& offer, TimeMs now);

  struct Outstanding {
    TaskOffer offer;
    TimeMs offered_at = 0;
  };

  int shard_index_;
  JobStore& jobs_;
  JobManager& job_manager_;
  Scheduler* scheduler_;
  BindingLedger& ledger_;
  ClientManagerConfig cfg_;
  ClientWindowStore& window_;
  ClientCache& cache_;
  mutable std::mutex mu_;  // guards outstanding_ and served_
  std::unordered_map<std::string, std::vector<Outstanding>> outstanding_;
  // batch-path offers already made, so a client that let one lapse is not
  // re-offered the same round
  std::map<std::tuple<std::string, std::string, int>, TimeMs> served_;
};

}  // namespace fedsched
