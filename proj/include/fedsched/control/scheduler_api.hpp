#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fedsched/store/client_window.hpp"
#include "fedsched/store/job_store.hpp"

namespace fedsched {

// The API surface handed to scheduling policy plugins. Everything is
// read-only except set_score; plugins cannot reach demand, amount, round or
// constraints mutably through this type.
class SchedulerApi {
 public:
  SchedulerApi(JobStore& jobs, std::vector<ClientWindowStore*> windows)
      : jobs_(jobs), windows_(std::move(windows)) {}

  void set_now(TimeMs now) { now_ = now; }
  TimeMs now() const { return now_; }

  bool exist(const std::string& job_id) const { return jobs_.exists(job_id); }
  std::size_t get_job_size() const { return jobs_.size(); }

  // Field value by schema name; null when the job or field is unknown.
  nlohmann::json get_field(const std::string& job_id, const std::string& field_name) const;

  std::vector<std::string> query(const Query& q) const { return jobs_.query(q); }
  std::vector<std::string> query(const std::string& query_str) const;

  bool set_score(const std::string& job_id, double score) {
    return jobs_.set_score(job_id, score);
  }

  // Client-side statistics aggregate across all shards' windows.
  std::size_t get_client_size() const;
  double get_client_proportion(const Constraint& public_constraint) const;
  std::size_t get_client_subset_size(const Query& q) const;

 private:
  JobStore& jobs_;
  std::vector<ClientWindowStore*> windows_;
  TimeMs now_ = 0;
};

}  // namespace fedsched
