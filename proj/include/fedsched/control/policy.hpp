#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fedsched/control/scheduler_api.hpp"
#include "fedsched/util/rng.hpp"

namespace fedsched {

enum class SchedMode { kOnline, kSmallBatch };

// A batch of requesting jobs sharing one client-resource partition. Member
// order is the intra-group priority.
struct JobGroup {
  std::string group_id;
  std::vector<std::string> members;
  Query client_query;
};

// Scheduling policy plugin. ONLINE plugins express priority purely through
// set_score; SMALL_BATCH plugins express it through partition().
class PolicyPlugin {
 public:
  virtual ~PolicyPlugin() = default;
  virtual std::string name() const = 0;
  virtual SchedMode mode() const = 0;
  virtual void on_job_register(SchedulerApi&, const std::string&) {}
  virtual void on_job_request(SchedulerApi&, const std::string&) {}
  virtual void on_tick(SchedulerApi&, TimeMs) {}
  virtual std::vector<JobGroup> partition(SchedulerApi&, const std::vector<std::string>&) {
    return {};
  }
};

// First-come-first-served: score = -time_stamp, set once at registration.
class FifoPolicy : public PolicyPlugin {
 public:
  std::string name() const override { return "fifo"; }
  SchedMode mode() const override { return SchedMode::kOnline; }
  void on_job_register(SchedulerApi& api, const std::string& job_id) override;
};

// Seeded uniform score, redrawn on every round request.
class RandomPolicy : public PolicyPlugin {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(Rng(seed).fork("policy.random")) {}
  std::string name() const override { return "random"; }
  SchedMode mode() const override { return SchedMode::kOnline; }
  void on_job_request(SchedulerApi& api, const std::string& job_id) override;

 private:
  Rng rng_;
};

// Jobs whose eligible clients are rare in the window rank first:
// score = 1 - proportion(public_constraint). Rescored on request and on tick.
class RarityPolicy : public PolicyPlugin {
 public:
  std::string name() const override { return "rarity"; }
  SchedMode mode() const override { return SchedMode::kOnline; }
  void on_job_request(SchedulerApi& api, const std::string& job_id) override;
  void on_tick(SchedulerApi& api, TimeMs now) override;

 private:
  void rescore(SchedulerApi& api, const std::string& job_id);
  std::set<std::string> seen_;
};

// Small-batch fair share: requesting jobs bucketed by public-constraint
// signature; each bucket becomes a group whose client query is the shared
// lower bounds; least-served members first.
class FairSharePolicy : public PolicyPlugin {
 public:
  std::string name() const override { return "fairshare_smallbatch"; }
  SchedMode mode() const override { return SchedMode::kSmallBatch; }
  std::vector<JobGroup> partition(SchedulerApi& api,
                                  const std::vector<std::string>& requesting_jobs) override;
};

// Factory for the config key scheduler.policy. Throws on unknown names.
std::unique_ptr<PolicyPlugin> make_policy(const std::string& name, std::uint64_t seed);

}  // namespace fedsched
