#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fedsched/domain/attributes.hpp"
#include "fedsched/util/time.hpp"

namespace fedsched {

enum class JobState { kRegistered, kRequesting, kExecuting, kFinished };

std::string_view to_string(JobState s);
std::optional<JobState> job_state_from_string(std::string_view s);

// What a job framework submits at registration.
struct JobSpec {
  int total_round = 1;
  int est_demand = 1;
  Constraint public_constraint;
  Constraint private_constraint;
  double workload_per_client = 1.0;  // abstract compute units, simulation-only

  bool valid() const { return total_round >= 1 && est_demand >= 1 && workload_per_client > 0; }
};

// One row of the job database.
struct JobRecord {
  std::string job_id;
  TimeMs time_stamp = 0;    // registration time
  TimeMs total_sched = 0;   // accumulated waiting-for-clients time over closed requests
  TimeMs start_sched = 0;   // last round-request time
  std::string job_ip;
  int port = 0;
  long long total_demand = 0;  // est_demand x total_round, fixed at registration
  int total_round = 0;
  long long attained_service = 0;  // sum of final amounts over closed rounds
  int round = 0;
  int demand = 0;
  int amount = 0;
  double score = 0.0;
  Constraint public_constraint;
  Constraint private_constraint;
  double workload_per_client = 1.0;
  JobState state = JobState::kRegistered;

  // Numeric field lookup backing query evaluation over the job database.
  // Unknown names yield nullopt, which makes any clause on them false.
  std::optional<double> numeric_field(std::string_view name) const;

  nlohmann::json to_json() const;
};

}  // namespace fedsched
