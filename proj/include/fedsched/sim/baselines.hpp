#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "fedsched/sim/config.hpp"
#include "fedsched/sim/trace.hpp"

namespace fedsched {

// Static-partition baseline: each client is pinned to one job it is eligible
// for, partition sizes proportional to job demand (largest-remainder quotas).
// Clients eligible for nothing stay unassigned (-1).
struct StaticAssignment {
  std::unordered_map<std::string, int> client_to_job;  // -1 entries omitted
  std::vector<int> partition_sizes;
  std::vector<long long> quotas;

  int job_of(const std::string& client_id) const {
    auto it = client_to_job.find(client_id);
    return it == client_to_job.end() ? -1 : it->second;
  }
};

StaticAssignment compute_static_assignment(const std::vector<JobSetup>& jobs,
                                           const std::vector<TraceRecord>& trace);

}  // namespace fedsched
