#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedsched/control/client_manager.hpp"
#include "fedsched/control/job_manager.hpp"
#include "fedsched/domain/job.hpp"

namespace fedsched {

// How clients find jobs: the managed control plane (online scores or
// small-batch partitions), a fixed client-to-job partition, or random
// per-client probing.
enum class SimMode { kManagedOnline, kManagedSmallBatch, kStaticPartition, kPureRandom };

std::string to_string(SimMode m);
std::optional<SimMode> sim_mode_from_string(const std::string& s);

// One job framework in the experiment.
struct JobSetup {
  TimeMs arrival = 0;   // registration time
  JobSpec spec;         // constraints, rounds, est_demand, workload
  int demand = 1;       // per-round demand passed to JOB_REQUEST
  int model_size = 16;  // plan payload bytes == update vector dimension
  std::string job_ip = "10.0.0.1";
  int port = 50061;

  nlohmann::json to_json() const;
  static JobSetup from_json(const nlohmann::json& j);
};

// Everything that, together with a trace, fully determines a run.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  SimMode mode = SimMode::kManagedOnline;
  std::string policy = "random";            // fifo | random | rarity | fairshare_smallbatch
  std::string binding_plugin = "default";   // default | prefer_smallest_round

  TimeMs duration_limit = 14'400'000;  // wall limit, FAILED beyond this
  TimeMs latency = 50;                 // per client-facing message leg
  TimeMs backoff = 15'000;             // client retry wait
  TimeMs sched_tick = 10'000;
  TimeMs regist_retry = 30'000;        // job retry after admission rejection
  TimeMs model_update_delay = 1'000;   // framework think time between rounds
  TimeMs round_deadline = 60'000;      // straggler cutoff after demand met

  int shards = 1;
  JobManagerConfig admission;          // applies to managed modes only
  ClientManagerConfig binding;

  // data plane
  std::vector<int> tree_parents = {-1, 0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4};
  TimeMs plan_ttl = 60'000;
  TimeMs flush_period = 5'000;
  TimeMs inter_server_latency = 20;  // per tree hop on a cold pull

  std::vector<JobSetup> jobs;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_toml_file(const std::string& path);
};

// The calibrated multi-tier job mix used by the stock experiments: five jobs
// across three public-constraint tiers (loose / medium / strict) with varied
// demands and private constraints.
std::vector<JobSetup> default_job_mix();

}  // namespace fedsched
