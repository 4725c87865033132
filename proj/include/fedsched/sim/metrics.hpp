#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedsched/util/time.hpp"

namespace fedsched {

// One row of the simulation event log. The log is the single source of truth
// for metrics and audits: everything below is recomputable from it alone.
struct LogEvent {
  TimeMs t = 0;
  std::string kind;
  nlohmann::json fields;
};

class EventLog {
 public:
  void append(TimeMs t, std::string kind, nlohmann::json fields);
  const std::vector<LogEvent>& events() const { return events_; }

  std::string to_jsonl() const;
  void write_jsonl(std::ostream& out) const;
  static std::vector<LogEvent> read_jsonl(std::istream& in);
  static std::vector<LogEvent> read_jsonl_file(const std::string& path);

 private:
  std::vector<LogEvent> events_;
};

struct MetricsReport {
  bool failed = false;
  int num_clients = 0;
  int jobs_total = 0;
  int jobs_finished = 0;
  long long bindings = 0;
  long long tasks_done = 0;
  long long tasks_failed = 0;
  double makespan_s = 0;
  double resource_utilization = 0;  // participation time / (clients x makespan)
  double throughput = 0;            // bindings per second
  double avg_jct_s = 0;
  double request_completion_s = 0;  // mean round wait for clients
  double execution_completion_s = 0;  // mean demand-met -> result-ready
  double failure_rate = 0;
  std::map<std::string, double> per_job_jct_s;
  nlohmann::json allocation_ledger;  // per job: per-round final amounts

  nlohmann::json to_json() const;
};

MetricsReport compute_metrics(const std::vector<LogEvent>& log);

// Re-verifies the cross-module invariants from the log alone; returns the
// violations found (empty == clean).
std::vector<std::string> audit_log(const std::vector<LogEvent>& log);

}  // namespace fedsched
