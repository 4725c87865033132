#pragma once

#include "fedsched/sim/config.hpp"
#include "fedsched/sim/metrics.hpp"
#include "fedsched/sim/trace.hpp"

namespace fedsched {

struct RunOutput {
  MetricsReport report;
  EventLog log;
  std::vector<JobRecord> final_jobs;  // job database at end of run
};

// Deterministic discrete-event run: identical (config, trace) pairs yield
// byte-identical event logs. Ends when every job finished, the event queue
// drains (stall), or the wall limit is hit; the last two mark the run FAILED.
RunOutput run_simulation(const ExperimentConfig& cfg, const std::vector<TraceRecord>& trace);

}  // namespace fedsched
