#include "fedsched/control/job_manager.hpp"

#include <cstdio>

namespace fedsched {

std::size_t JobManager::window_size(TimeMs now) const {
  std::size_t total = 0;
  for (auto* w : windows_) total += w->size(now);
  return total;
}

std::size_t JobManager::admission_cap(TimeMs now) const {
  return static_cast<std::size_t>(cfg_.cap_fraction * static_cast<double>(window_size(now)));
}

RegisterResult JobManager::job_regist(const JobSpec& spec, const std::string& job_ip, int port,
                                      TimeMs now) {
  if (!spec.valid()) return {};
  if (cfg_.admission_enabled) {
    bool grace = window_size(now) == 0 && now <= cfg_.bootstrap_grace;
    if (!grace && static_cast<std::size_t>(spec.est_demand) > admission_cap(now)) return {};
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "j%04lld", next_id_++);
  JobRecord rec;
  rec.job_id = buf;
  rec.time_stamp = now;
  rec.job_ip = job_ip;
  rec.port = port;
  rec.total_demand = static_cast<long long>(spec.est_demand) * spec.total_round;
  rec.total_round = spec.total_round;
  rec.public_constraint = spec.public_constraint;
  rec.private_constraint = spec.private_constraint;
  rec.workload_per_client = spec.workload_per_client;
  rec.state = JobState::kRegistered;
  jobs_.put(rec);
  if (scheduler_) scheduler_->on_job_register(rec.job_id, now);
  return {true, rec.job_id};
}

bool JobManager::job_request(const std::string& job_id, int demand, TimeMs now) {
  if (demand < 1) return false;
  bool ok = false;
  jobs_.update(job_id, [&](JobRecord& rec) {
    if (rec.state != JobState::kRegistered && rec.state != JobState::kExecuting) return;
    if (rec.round >= rec.total_round) return;
    rec.round += 1;
    rec.demand = demand;
    rec.amount = 0;
    rec.start_sched = now;
    rec.state = JobState::kRequesting;
    ok = true;
  });
  if (ok && scheduler_) scheduler_->on_job_request(job_id, now);
  return ok;
}

bool JobManager::close_request_locked(JobRecord& rec, TimeMs now) {
  if (rec.state != JobState::kRequesting) return false;
  rec.state = JobState::kExecuting;
  rec.total_sched += now - rec.start_sched;
  rec.attained_service += rec.amount;
  return true;
}

bool JobManager::job_end_request(const std::string& job_id, TimeMs now) {
  bool ok = false;
  jobs_.update(job_id, [&](JobRecord& rec) { ok = close_request_locked(rec, now); });
  return ok;
}

void JobManager::handle_demand_met(const std::string& job_id, TimeMs now) {
  bool closed = false;
  jobs_.update(job_id, [&](JobRecord& rec) { closed = close_request_locked(rec, now); });
  if (closed && listener_) listener_->on_demand_met(job_id, now);
}

bool JobManager::job_finish(const std::string& job_id, TimeMs now) {
  bool ok = false;
  jobs_.update(job_id, [&](JobRecord& rec) {
    if (rec.state == JobState::kFinished) return;
    close_request_locked(rec, now);  // mid-round abandon closes accounting
    rec.state = JobState::kFinished;
    ok = true;
  });
  if (ok && scheduler_) scheduler_->on_job_finished(job_id, now);
  return ok;
}

}  // namespace fedsched
