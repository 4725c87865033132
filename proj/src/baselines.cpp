#include "fedsched/sim/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace fedsched {

StaticAssignment compute_static_assignment(const std::vector<JobSetup>& jobs,
                                           const std::vector<TraceRecord>& trace) {
  StaticAssignment out;
  const int J = static_cast<int>(jobs.size());
  out.partition_sizes.assign(J, 0);
  out.quotas.assign(J, 0);
  if (J == 0) return out;

  std::vector<std::vector<int>> eligible(trace.size());
  long long assignable = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (int j = 0; j < J; ++j)
      if (satisfies(trace[i].info.public_attrs, jobs[j].spec.public_constraint))
        eligible[i].push_back(j);
    if (!eligible[i].empty()) ++assignable;
  }

  long long demand_sum = 0;
  for (const auto& j : jobs) demand_sum += j.demand;
  if (demand_sum == 0) demand_sum = 1;

  // largest-remainder quotas over the assignable clients
  std::vector<double> exact(J);
  long long floor_sum = 0;
  for (int j = 0; j < J; ++j) {
    exact[j] = static_cast<double>(assignable) * jobs[j].demand / static_cast<double>(demand_sum);
    out.quotas[j] = static_cast<long long>(exact[j]);
    floor_sum += out.quotas[j];
  }
  std::vector<int> order(J);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double fa = exact[a] - std::floor(exact[a]);
    double fb = exact[b] - std::floor(exact[b]);
    return fa != fb ? fa > fb : a < b;
  });
  for (long long r = assignable - floor_sum, k = 0; r > 0 && k < J; --r, ++k)
    out.quotas[order[k]] += 1;

  // clients with a single eligible job take it regardless of quota
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (eligible[i].size() == 1) {
      int j = eligible[i][0];
      out.client_to_job[trace[i].info.client_id] = j;
      out.partition_sizes[j] += 1;
    }
  }
  // flexible clients chase the largest remaining quota deficit; clients with
  // the fewest options are placed first so narrow jobs can reach their quota
  std::vector<std::size_t> order2;
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (eligible[i].size() >= 2) order2.push_back(i);
  std::stable_sort(order2.begin(), order2.end(), [&](std::size_t a, std::size_t b) {
    return eligible[a].size() < eligible[b].size();
  });
  for (std::size_t i : order2) {
    int best = eligible[i][0];
    long long best_deficit = out.quotas[best] - out.partition_sizes[best];
    for (std::size_t k = 1; k < eligible[i].size(); ++k) {
      int j = eligible[i][k];
      long long deficit = out.quotas[j] - out.partition_sizes[j];
      if (deficit > best_deficit) {
        best = j;
        best_deficit = deficit;
      }
    }
    out.client_to_job[trace[i].info.client_id] = best;
    out.partition_sizes[best] += 1;
  }
  return out;
}

}  // namespace fedsched
