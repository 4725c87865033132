#pragma once

#include <string>
#include <vector>

#include "fedsched/control/scheduler.hpp"
#include "fedsched/store/client_window.hpp"
#include "fedsched/store/job_store.hpp"

namespace fedsched {

struct RegisterResult {
  bool ack = false;
  std::string job_id;  // present iff ack
};

struct JobManagerConfig {
  bool admission_enabled = true;
  double cap_fraction = 0.25;     // admission cap = fraction of window size
  TimeMs bootstrap_grace = 60'000;  // empty-window grace at startup
};

// Notifications back to the job framework.
class JobEventListener {
 public:
  virtual ~JobEventListener() = default;
  virtual void on_demand_met(const std::string&, TimeMs) {}
};

// Application layer: admission control and job lifecycle. All state lives in
// the JobStore; transitions are atomic read-modify-write.
//
// Lifecycle: REGISTERED -> (REQUESTING <-> EXECUTING)* -> FINISHED.
// A round auto-closes to EXECUTING when the allocation counter reaches the
// requested demand; JOB_END_REQUEST exists for early termination.
class JobManager {
 public:
  JobManager(JobStore& jobs, Scheduler* scheduler, std::vector<ClientWindowStore*> windows,
             JobManagerConfig cfg = {})
      : jobs_(jobs), scheduler_(scheduler), windows_(std::move(windows)), cfg_(cfg) {}

  void set_listener(JobEventListener* listener) { listener_ = listener; }

  RegisterResult job_regist(const JobSpec& spec, const std::string& job_ip, int port, TimeMs now);
  bool job_request(const std::string& job_id, int demand, TimeMs now);
  bool job_end_request(const std::string& job_id, TimeMs now);
  bool job_finish(const std::string& job_id, TimeMs now);

  // Invoked by the binding layer when an increment fills the round's demand.
  void handle_demand_met(const std::string& job_id, TimeMs now);

  std::size_t admission_cap(TimeMs now) const;

 private:
  std::size_t window_size(TimeMs now) const;
  bool close_request_locked(JobRecord& rec, TimeMs now);

  JobStore& jobs_;
  Scheduler* scheduler_;
  std::vector<ClientWindowStore*> windows_;
  JobManagerConfig cfg_;
  JobEventListener* listener_ = nullptr;
  long long next_id_ = 0;
};

}  // namespace fedsched
