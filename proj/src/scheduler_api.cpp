#include "fedsched/control/scheduler_api.hpp"

namespace fedsched {

nlohmann::json SchedulerApi::get_field(const std::string& job_id,
                                       const std::string& field_name) const {
  auto rec = jobs_.get(job_id);
  if (!rec) return nullptr;
  if (field_name == "job_id") return rec->job_id;
  if (field_name == "job_ip") return rec->job_ip;
  if (field_name == "state") return std::string(to_string(rec->state));
  if (field_name == "public_constraint") return rec->public_constraint.to_json();
  if (field_name == "private_constraint") return rec->private_constraint.to_json();
  if (auto v = rec->numeric_field(field_name)) return *v;
  return nullptr;
}

std::vector<std::string> SchedulerApi::query(const std::string& query_str) const {
  auto q = Query::parse(query_str);
  if (!q) return {};
  return jobs_.query(*q);
}

std::size_t SchedulerApi::get_client_size() const {
  std::size_t total = 0;
  for (auto* w : windows_) total += w->size(now_);
  return total;
}

double SchedulerApi::get_client_proportion(const Constraint& public_constraint) const {
  std::size_t total = 0, hits = 0;
  for (auto* w : windows_) {
    total += w->size(now_);
    hits += w->count_satisfying(now_, public_constraint);
  }
  if (total == 0) return 0.0;
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::size_t SchedulerApi::get_client_subset_size(const Query& q) const {
  std::size_t hits = 0;
  for (auto* w : windows_) hits += w->subset_size(now_, q);
  return hits;
}

}  // namespace fedsched
