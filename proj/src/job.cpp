#include "fedsched/domain/job.hpp"

namespace fedsched {

std::string_view to_string(JobState s) {
  switch (s) {
    case JobState::kRegistered: return "REGISTERED";
    case JobState::kRequesting: return "REQUESTING";
    case JobState::kExecuting: return "EXECUTING";
    case JobState::kFinished: return "FINISHED";
  }
  return "UNKNOWN";
}

std::optional<JobState> job_state_from_string(std::string_view s) {
  if (s == "REGISTERED") return JobState::kRegistered;
  if (s == "REQUESTING") return JobState::kRequesting;
  if (s == "EXECUTING") return JobState::kExecuting;
  if (s == "FINISHED") return JobState::kFinished;
  return std::nullopt;
}

std::optional<double> JobRecord::numeric_field(std::string_view name) const {
  if (name == "time_stamp") return static_cast<double>(time_stamp);
  if (name == "total_sched") return static_cast<double>(total_sched);
  if (name == "start_sched") return static_cast<double>(start_sched);
  if (name == "port") return static_cast<double>(port);
  if (name == "total_demand") return static_cast<double>(total_demand);
  if (name == "total_round") return static_cast<double>(total_round);
  if (name == "attained_service") return static_cast<double>(attained_service);
  if (name == "round") return static_cast<double>(round);
  if (name == "demand") return static_cast<double>(demand);
  if (name == "amount") return static_cast<double>(amount);
  if (name == "score") return score;
  return std::nullopt;
}

nlohmann::json JobRecord::to_json() const {
  return nlohmann::json{{"job_id", job_id},
                        {"time_stamp", time_stamp},
                        {"total_sched", total_sched},
                        {"start_sched", start_sched},
                        {"job_ip", job_ip},
                        {"port", port},
                        {"total_demand", total_demand},
                        {"total_round", total_round},
                        {"attained_service", attained_service},
                        {"round", round},
                        {"demand", demand},
                        {"amount", amount},
                        {"score", score},
                        {"public_constraint", public_constraint.to_json()},
                        {"private_constraint", private_constraint.to_json()},
                        {"state", std::string(to_string(state))}};
}

}  // namespace fedsched
