#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fedsched/domain/job.hpp"
#include "fedsched/domain/query.hpp"

namespace fedsched {

// Job database: key-value store indexed by job id. All mutating operations
// are atomic read-modify-write under one lock; queries see a consistent
// snapshot.
class JobStore {
 public:
  void put(JobRecord record);
  std::optional<JobRecord> get(const std::string& job_id) const;
  bool exists(const std::string& job_id) const;
  std::size_t size() const;

  // Ids of records matching q, ordered score desc, time_stamp asc, job_id asc.
  std::vector<std::string> query(const Query& q) const;

  // False when the job is absent.
  bool set_score(const std::string& job_id, double score);

  // Atomic allocation-counter bump. Returns the new amount, or nullopt
  // (REJECTED) when the job is absent, not REQUESTING, or already saturated.
  std::optional<int> increment_amount(const std::string& job_id);

  // Atomic in-place update; false when absent. Used by the job manager for
  // lifecycle transitions.
  bool update(const std::string& job_id, const std::function<void(JobRecord&)>& fn);

  std::vector<JobRecord> snapshot() const;
  // REQUESTING jobs in priority order (score desc, time_stamp asc, id asc).
  std::vector<JobRecord> requesting_jobs() const;
  std::vector<std::string> requesting_ids() const;

  // Debug dump, one JSON record per line.
  void dump_jsonl(std::ostream& out) const;

 private:
  static bool priority_less(const JobRecord& a, const JobRecord& b);

  mutable std::mutex mu_;
  std::map<std::string, JobRecord> records_;
};

}  // namespace fedsched
