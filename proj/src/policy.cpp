#include "fedsched/control/policy.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fedsched {

void FifoPolicy::on_job_register(SchedulerApi& api, const std::string& job_id) {
  auto ts = api.get_field(job_id, "time_stamp");
  if (ts.is_null()) return;
  api.set_score(job_id, -ts.get<double>());
}

void RandomPolicy::on_job_request(SchedulerApi& api, const std::string& job_id) {
  api.set_score(job_id, rng_.uniform());
}

void RarityPolicy::rescore(SchedulerApi& api, const std::string& job_id) {
  auto c = api.get_field(job_id, "public_constraint");
  if (c.is_null()) return;
  double proportion = api.get_client_proportion(Constraint::from_json(c));
  api.set_score(job_id, 1.0 - proportion);
}

void RarityPolicy::on_job_request(SchedulerApi& api, const std::string& job_id) {
  seen_.insert(job_id);
  rescore(api, job_id);
}

void RarityPolicy::on_tick(SchedulerApi& api, TimeMs now) {
  (void)now;
  for (const auto& job_id : seen_)
    if (api.exist(job_id)) rescore(api, job_id);
}

std::vector<JobGroup> FairSharePolicy::partition(
    SchedulerApi& api, const std::vector<std::string>& requesting_jobs) {
  struct Member {
    std::string job_id;
    double attained = 0;
  };
  struct Bucket {
    Constraint constraint;
    std::vector<Member> members;
    double min_attained = 0;
  };
  std::map<std::string, Bucket> buckets;  // keyed by constraint signature
  for (const auto& job_id : requesting_jobs) {
    auto cj = api.get_field(job_id, "public_constraint");
    auto attained = api.get_field(job_id, "attained_service");
    if (cj.is_null() || attained.is_null()) continue;
    Constraint c = Constraint::from_json(cj);
    auto [it, inserted] = buckets.try_emplace(c.signature());
    if (inserted) it->second.constraint = c;
    it->second.members.push_back(Member{job_id, attained.get<double>()});
  }
  std::vector<Bucket*> ordered;
  for (auto& [sig, bucket] : buckets) {
    std::sort(bucket.members.begin(), bucket.members.end(), [](const Member& a, const Member& b) {
      return a.attained != b.attained ? a.attained < b.attained : a.job_id < b.job_id;
    });
    bucket.min_attained = bucket.members.front().attained;
    ordered.push_back(&bucket);
  }
  // Least-served buckets get first pick of the cache.
  std::stable_sort(ordered.begin(), ordered.end(), [](const Bucket* a, const Bucket* b) {
    return a->min_attained < b->min_attained;
  });
  std::vector<JobGroup> groups;
  groups.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    JobGroup g;
    g.group_id = "g" + std::to_string(i);
    g.client_query = Query::from_lower_bounds(ordered[i]->constraint);
    for (auto& m : ordered[i]->members) g.members.push_back(m.job_id);
    groups.push_back(std::move(g));
  }
  return groups;
}

std::unique_ptr<PolicyPlugin> make_policy(const std::string& name, std::uint64_t seed) {
  if (name == "fifo") return std::make_unique<FifoPolicy>();
  if (name == "random") return std::make_unique<RandomPolicy>(seed);
  if (name == "rarity") return std::make_unique<RarityPolicy>();
  if (name == "fairshare_smallbatch") return std::make_unique<FairSharePolicy>();
  throw std::invalid_argument("unknown scheduler policy: " + name);
}

}  // namespace fedsched
