#pragma once

#include <chrono>
#include <memory>
#include <mutex>

#include "fedsched/control/policy.hpp"

namespace fedsched {

// Hosts the policy plugin, serializes its hooks, and publishes its output:
// ONLINE scores land in the shared job store via the api; SMALL_BATCH
// partitions are replaced atomically as immutable snapshots.
class Scheduler {
 public:
  using Partition = std::vector<JobGroup>;

  Scheduler(JobStore& jobs, std::vector<ClientWindowStore*> windows,
            std::unique_ptr<PolicyPlugin> plugin)
      : api_(jobs, std::move(windows)), jobs_(jobs), plugin_(std::move(plugin)) {}

  SchedMode mode() const { return plugin_->mode(); }
  const std::string policy_name() const { return plugin_->name(); }

  void on_job_register(const std::string& job_id, TimeMs now);
  void on_job_request(const std::string& job_id, TimeMs now);
  void on_tick(TimeMs now);
  void on_job_finished(const std::string& job_id, TimeMs now);

  // Latest published partition; null before the first publication (readers
  // fall back to online score order).
  std::shared_ptr<const Partition> current_partition() const;

  // Wall-clock cost of the latest partition() call, for runtime trend checks.
  double last_partition_seconds() const { return last_partition_seconds_; }

  SchedulerApi& api() { return api_; }

 private:
  void repartition(TimeMs now);

  SchedulerApi api_;
  JobStore& jobs_;
  std::unique_ptr<PolicyPlugin> plugin_;
  mutable std::mutex mu_;
  std::shared_ptr<const Partition> partition_;
  double last_partition_seconds_ = 0.0;
};

}  // namespace fedsched
