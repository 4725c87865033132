#include "fedsched/store/job_store.hpp"

#include <algorithm>

namespace fedsched {

bool JobStore::priority_less(const JobRecord& a, const JobRecord& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.time_stamp != b.time_stamp) return a.time_stamp < b.time_stamp;
  return a.job_id < b.job_id;
}

void JobStore::put(JobRecord record) {
  std::lock_guard lock(mu_);
  records_[record.job_id] = std::move(record);
}

std::optional<JobRecord> JobStore::get(const std::string& job_id) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(job_id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

bool JobStore::exists(const std::string& job_id) const {
  std::lock_guard lock(mu_);
  return records_.count(job_id) > 0;
}

std::size_t JobStore::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::vector<std::string> JobStore::query(const Query& q) const {
  std::vector<JobRecord> matched;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, rec] : records_) {
      if (q.eval([&rec](std::string_view f) { return rec.numeric_field(f); }))
        matched.push_back(rec);
    }
  }
  std::sort(matched.begin(), matched.end(), priority_less);
  std::vector<std::string> ids;
  ids.reserve(matched.size());
  for (const auto& rec : matched) ids.push_back(rec.job_id);
  return ids;
}

bool JobStore::set_score(const std::string& job_id, double score) {
  std::lock_guard lock(mu_);
  auto it = records_.find(job_id);
  if (it == records_.end()) return false;
  it->second.score = score;
  return true;
}

std::optional<int> JobStore::increment_amount(const std::string& job_id) {
  std::lock_guard lock(mu_);
  auto it = records_.find(job_id);
  if (it == records_.end()) return std::nullopt;
  JobRecord& rec = it->second;
  if (rec.state != JobState::kRequesting) return std::nullopt;
  if (rec.amount >= rec.demand) return std::nullopt;
  return ++rec.amount;
}

bool JobStore::update(const std::string& job_id, const std::function<void(JobRecord&)>& fn) {
  std::lock_guard lock(mu_);
  auto it = records_.find(job_id);
  if (it == records_.end()) return false;
  fn(it->second);
  return true;
}

std::vector<JobRecord> JobStore::snapshot() const {
  std::lock_guard lock(mu_);
  std::vector<JobRecord> out;
  out.reserve(records_.size());
  for (const auto& [id, rec] : records_) out.push_back(rec);
  return out;
}

std::vector<JobRecord> JobStore::requesting_jobs() const {
  std::vector<JobRecord> out;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, rec] : records_)
      if (rec.state == JobState::kRequesting) out.push_back(rec);
  }
  std::sort(out.begin(), out.end(), priority_less);
  return out;
}

std::vector<std::string> JobStore::requesting_ids() const {
  auto jobs = requesting_jobs();
  std::vector<std::string> ids;
  ids.reserve(jobs.size());
  for (const auto& rec : jobs) ids.push_back(rec.job_id);
  return ids;
}

void JobStore::dump_jsonl(std::ostream& out) const {
  std::lock_guard lock(mu_);
  for (const auto& [id, rec] : records_) out << rec.to_json().dump() << "\n";
}

}  // namespace fedsched
