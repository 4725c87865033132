#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <map>
#include <sstream>

#include "fedsched/sim/baselines.hpp"
#include "fedsched/sim/simulator.hpp"
#include "fedsched/util/rng.hpp"

using namespace fedsched;

namespace {

TraceRecord make_trace_client(const std::string& id, TimeMs start, TimeMs end, double cpu = 8,
                              double speed = 1, double bw = 1, double ds = 500) {
  TraceRecord r;
  r.info.client_id = id;
  r.info.public_attrs =
      AttributeMap{{"cpu_f", cpu}, {"ram", 8192.0}, {"fp16_mem", 4096.0}, {"android_os", 12.0}};
  r.info.private_attrs = AttributeMap{{"dataset_size", ds}, {"sample_quality", 0.9}};
  r.info.avail_start = start;
  r.info.avail_end = end;
  r.info.speed = speed;
  r.info.bandwidth = bw;
  r.region = "r0";
  return r;
}

JobSetup make_job(TimeMs arrival, int rounds, int demand, double workload,
                  Constraint pub = {{"cpu_f", 4.0}}, Constraint priv = {{"dataset_size", 100.0}}) {
  JobSetup s;
  s.arrival = arrival;
  s.spec.total_round = rounds;
  s.spec.est_demand = demand;
  s.spec.public_constraint = std::move(pub);
  s.spec.private_constraint = std::move(priv);
  s.spec.workload_per_client = workload;
  s.demand = demand;
  s.model_size = 2;
  return s;
}

// all delays except transfer/execute zeroed so timelines can be hand-checked
ExperimentConfig zero_latency_config() {
  ExperimentConfig cfg;
  cfg.seed = 1;
  cfg.mode = SimMode::kManagedOnline;
  cfg.policy = "fifo";
  cfg.latency = 0;
  cfg.inter_server_latency = 0;
  cfg.model_update_delay = 1'000;
  cfg.backoff = 15'000;
  cfg.duration_limit = 3'600'000;
  return cfg;
}

}  // namespace

TEST_CASE("single binding arithmetic: utilization = task time / jct") {
  // one job, one round, demand 1; one always-available eligible client.
  // timeline: register t=0, client arrives t=1s, binds at 1s, plan transfer
  // 2s, executes 10s, uploads 2s -> done at 15s; round closes, job finishes.
  auto cfg = zero_latency_config();
  cfg.jobs = {make_job(0, 1, 1, 10.0)};
  std::vector<TraceRecord> trace = {make_trace_client("c0", 1'000, 10'000'000)};
  auto out = run_simulation(cfg, trace);
  const auto& r = out.report;
  CHECK_FALSE(r.failed);
  CHECK(r.bindings == 1);
  CHECK(r.tasks_done == 1);
  CHECK(r.makespan_s == doctest::Approx(15.0));
  CHECK(r.avg_jct_s == doctest::Approx(15.0));
  // participation 14s (bound 1s -> done 15s), 1 client, makespan 15s
  CHECK(r.resource_utilization == doctest::Approx(14.0 / 15.0));
  CHECK(r.throughput == doctest::Approx(1.0 / 15.0));
  CHECK(r.failure_rate == 0.0);
  CHECK(audit_log(out.log.events()).empty());
}

TEST_CASE("same seed and inputs give identical logs and reports") {
  auto cfg = zero_latency_config();
  cfg.policy = "random";
  cfg.jobs = {make_job(0, 2, 2, 10.0), make_job(0, 2, 1, 20.0)};
  std::vector<TraceRecord> trace;
  for (int i = 0; i < 6; ++i)
    trace.push_back(make_trace_client("c" + std::to_string(i), 1'000 + i * 700, 400'000));
  auto a = run_simulation(cfg, trace);
  auto b = run_simulation(cfg, trace);
  CHECK(a.log.to_jsonl() == b.log.to_jsonl());
  CHECK(a.report.to_json() == b.report.to_json());
}

TEST_CASE("golden tiny scenario: 3 clients, 2 jobs, 2 rounds (hand-traced timeline)") {
  // jobs register at t=0 (empty window -> bootstrap grace admits both).
  // fifo scores tie at -0; the tie breaks toward the lower job id (j0000).
  // clients (speed 1, bandwidth 1) arrive at t=1s. model_size 2 -> transfers
  // take 2s each way. j0: workload 10 (12s bind-to-upload-start), demand 2,
  // j1: workload 20, demand 1.
  //
  // hand-traced: j0 r1 fills at 1s with c0+c1 (done 15s each); c2 takes j1 r1
  // (done 25s). j0 closes r1 at 15s, requests r2 at 16s; c0/c1 idle until
  // 30s (15s backoff). c2 finishes at 25s, rebinds j0 r2 (done 39s). j1
  // closes r1 at 25s, requests r2 at 26s. at 30s c0 takes the last j0 r2
  // slot (done 44s) and c1, losing the j0 race, walks to j1 r2 (done 54s).
  // j0 finishes at 44s, j1 at 54s.
  auto cfg = zero_latency_config();
  cfg.jobs = {make_job(0, 2, 2, 10.0), make_job(0, 2, 1, 20.0)};
  std::vector<TraceRecord> trace = {make_trace_client("c0", 1'000, 10'000'000),
                                    make_trace_client("c1", 1'000, 10'000'000),
                                    make_trace_client("c2", 1'000, 10'000'000)};
  auto out = run_simulation(cfg, trace);
  const auto& r = out.report;
  CHECK_FALSE(r.failed);
  CHECK(r.bindings == 6);
  CHECK(r.tasks_done == 6);
  CHECK(r.tasks_failed == 0);
  CHECK(r.makespan_s == doctest::Approx(54.0));
  CHECK(r.per_job_jct_s.at("j0000") == doctest::Approx(44.0));
  CHECK(r.per_job_jct_s.at("j0001") == doctest::Approx(54.0));
  CHECK(r.avg_jct_s == doctest::Approx(49.0));
  CHECK(r.throughput == doctest::Approx(6.0 / 54.0));
  // participation: c0 14+14, c1 14+24, c2 24+14 = 104s over 3 clients x 54s
  CHECK(r.resource_utilization == doctest::Approx(104.0 / 162.0));
  // round waits: j0 r1 1s, j1 r1 1s, j0 r2 14s, j1 r2 4s
  CHECK(r.request_completion_s == doctest::Approx(5.0));
  // result lag: j0 r1 14s, j1 r1 24s, j0 r2 14s, j1 r2 24s
  CHECK(r.execution_completion_s == doctest::Approx(19.0));
  CHECK(audit_log(out.log.events()).empty());
}

TEST_CASE("event log round-trips through jsonl with identical metrics") {
  auto cfg = zero_latency_config();
  cfg.jobs = {make_job(0, 2, 2, 10.0)};
  std::vector<TraceRecord> trace = {make_trace_client("c0", 1'000, 300'000),
                                    make_trace_client("c1", 1'500, 300'000)};
  auto out = run_simulation(cfg, trace);
  std::istringstream in(out.log.to_jsonl());
  auto reloaded = EventLog::read_jsonl(in);
  REQUIRE(reloaded.size() == out.log.events().size());
  CHECK(compute_metrics(reloaded).to_json() == out.report.to_json());
  CHECK(audit_log(reloaded).empty());
}

TEST_CASE("departure mid-task fails the task; aborted tasks never upload") {
  auto cfg = zero_latency_config();
  cfg.jobs = {make_job(0, 1, 2, 10.0)};
  // c0 leaves at 8s: bound at 1s, needs until 15s -> failure at 8s.
  std::vector<TraceRecord> trace = {make_trace_client("c0", 1'000, 8'000),
                                    make_trace_client("c1", 1'000, 10'000'000)};
  auto out = run_simulation(cfg, trace);
  CHECK(out.report.tasks_failed == 1);
  CHECK(out.report.tasks_done == 1);
  CHECK(out.report.failure_rate == doctest::Approx(0.5));
  // the failed client produced no result: round count is 1
  long long count = -1;
  for (const auto& e : out.log.events())
    if (e.kind == "round_result") count = e.fields.at("count").get<long long>();
  CHECK(count == 1);
  CHECK(audit_log(out.log.events()).empty());
}

TEST_CASE("pure random and static partition modes run clean on a tiny scenario") {
  for (auto mode : {SimMode::kPureRandom, SimMode::kStaticPartition}) {
    auto cfg = zero_latency_config();
    cfg.mode = mode;
    cfg.jobs = {make_job(0, 2, 2, 10.0, Constraint{{"cpu_f", 4.0}}),
                make_job(0, 2, 1, 10.0, Constraint{{"cpu_f", 6.0}})};
    std::vector<TraceRecord> trace;
    for (int i = 0; i < 8; ++i)
      trace.push_back(make_trace_client("c" + std::to_string(i), 1'000 + 200 * i, 2'000'000,
                                        i < 4 ? 8 : 4));
    auto out = run_simulation(cfg, trace);
    INFO("mode ", to_string(mode));
    CHECK_FALSE(out.report.failed);
    CHECK(out.report.bindings == 6);
    CHECK(audit_log(out.log.events()).empty());
  }
}

TEST_CASE("small-batch mode completes and audits clean") {
  auto cfg = zero_latency_config();
  cfg.mode = SimMode::kManagedSmallBatch;
  cfg.policy = "fairshare_smallbatch";
  cfg.jobs = {make_job(0, 2, 2, 10.0), make_job(0, 2, 2, 10.0, Constraint{{"cpu_f", 6.0}})};
  std::vector<TraceRecord> trace;
  for (int i = 0; i < 10; ++i)
    trace.push_back(make_trace_client("c" + std::to_string(i), 1'000 + 300 * i, 2'000'000,
                                      i % 2 ? 8 : 5));
  auto out = run_simulation(cfg, trace);
  CHECK_FALSE(out.report.failed);
  CHECK(out.report.bindings == 8);
  CHECK(audit_log(out.log.events()).empty());
}

TEST_CASE("static partition: proportional quotas and eligibility") {
  // 2 jobs, demands {2,1}, 9 clients eligible for both -> quotas {6,3}
  std::vector<JobSetup> jobs = {make_job(0, 1, 2, 10.0, Constraint{{"cpu_f", 4.0}}),
                                make_job(0, 1, 1, 10.0, Constraint{{"cpu_f", 4.0}})};
  std::vector<TraceRecord> trace;
  for (int i = 0; i < 9; ++i)
    trace.push_back(make_trace_client("c" + std::to_string(i), 0, 1'000'000, 8));
  auto assignment = compute_static_assignment(jobs, trace);
  CHECK(assignment.partition_sizes == std::vector<int>{6, 3});

  // a client eligible only for job 1 goes there regardless of proportion
  jobs[0].spec.public_constraint = Constraint{{"cpu_f", 16.0}};
  auto a2 = compute_static_assignment(jobs, trace);
  CHECK(a2.partition_sizes[0] == 0);
  CHECK(a2.partition_sizes[1] == 9);

  // ineligible clients stay unassigned
  jobs[0].spec.public_constraint = Constraint{{"cpu_f", 4.0}};
  trace.push_back(make_trace_client("weak", 0, 1'000'000, 1));
  auto a3 = compute_static_assignment(jobs, trace);
  CHECK(a3.job_of("weak") == -1);

  // every assignment satisfies the assigned job's public constraint
  for (const auto& rec : trace) {
    int j = a3.job_of(rec.info.client_id);
    if (j >= 0) CHECK(satisfies(rec.info.public_attrs, jobs[j].spec.public_constraint));
  }
}

TEST_CASE("job accounting matches the event log") {
  auto cfg = zero_latency_config();
  cfg.policy = "random";
  cfg.jobs = {make_job(0, 3, 3, 10.0), make_job(0, 2, 2, 20.0)};
  std::vector<TraceRecord> trace;
  for (int i = 0; i < 8; ++i)
    trace.push_back(make_trace_client("c" + std::to_string(i), 1'000 + 500 * i, 2'000'000));
  auto out = run_simulation(cfg, trace);
  REQUIRE_FALSE(out.report.failed);
  // attained_service == sum of round amounts at close; total_sched == sum of
  // per-round waits from request to close
  std::map<std::string, long long> attained;
  std::map<std::string, TimeMs> sched_total;
  std::map<std::pair<std::string, int>, TimeMs> requested;
  for (const auto& e : out.log.events()) {
    if (e.kind == "job_request")
      requested[{e.fields.at("job_id"), e.fields.at("round")}] = e.t;
    if (e.kind == "demand_met" || e.kind == "end_request") {
      std::string id = e.fields.at("job_id");
      attained[id] += e.fields.at("amount").get<long long>();
      sched_total[id] += e.t - requested[{id, e.fields.at("round")}];
    }
  }
  for (const auto& rec : out.final_jobs) {
    CHECK(rec.state == JobState::kFinished);
    CHECK(rec.attained_service == attained[rec.job_id]);
    CHECK(rec.total_sched == sched_total[rec.job_id]);
  }
}

TEST_CASE("per-client random pick streams are uniform across the directory") {
  // the simulator draws baseline job picks as
  // fork("pick:<client>:<attempt>").uniform_int(J); each job must come up
  // first ~1/J of the time
  Rng master(99);
  const int kJobs = 4;
  std::map<int, int> firsts;
  int trials = 0;
  for (int c = 0; c < 2'000; ++c) {
    for (int attempt = 0; attempt < 5; ++attempt) {
      Rng pick =
          master.fork("pick:c" + std::to_string(c) + ":" + std::to_string(attempt));
      firsts[(int)pick.uniform_int(kJobs)] += 1;
      ++trials;
    }
  }
  // 3 sigma for a binomial with p = 1/4 over 10^4 trials is ~1.3%
  for (int j = 0; j < kJobs; ++j) {
    double freq = firsts[j] / double(trials);
    CHECK(std::abs(freq - 0.25) < 0.013);
  }
}

TEST_CASE("multi-shard binding layer: deterministic, complete, clean") {
  auto cfg = zero_latency_config();
  cfg.shards = 3;
  cfg.policy = "random";
  cfg.jobs = {make_job(0, 3, 4, 10.0), make_job(0, 3, 3, 10.0, Constraint{{"cpu_f", 6.0}})};
  std::vector<TraceRecord> trace;
  for (int i = 0; i < 20; ++i)
    trace.push_back(make_trace_client("c" + std::to_string(i), 1'000 + 150 * i, 2'000'000,
                                      i % 2 ? 8 : 5));
  auto a = run_simulation(cfg, trace);
  auto b = run_simulation(cfg, trace);
  CHECK_FALSE(a.report.failed);
  CHECK(a.report.bindings == 21);
  CHECK(audit_log(a.log.events()).empty());
  CHECK(a.log.to_jsonl() == b.log.to_jsonl());
}

TEST_CASE("stock config files parse into the calibrated experiment") {
  auto cfg = ExperimentConfig::from_toml_file(std::string(FEDSCHED_SOURCE_DIR) +
                                              "/configs/managed_online.toml");
  CHECK(cfg.mode == SimMode::kManagedOnline);
  CHECK(cfg.policy == "random");
  CHECK(cfg.duration_limit == 2'300'000);
  CHECK(cfg.admission.cap_fraction == 0.5);
  auto stock = default_job_mix();
  REQUIRE(cfg.jobs.size() == stock.size());
  for (std::size_t i = 0; i < stock.size(); ++i) {
    CAPTURE(i);
    CHECK(cfg.jobs[i].demand == stock[i].demand);
    CHECK(cfg.jobs[i].spec.total_round == stock[i].spec.total_round);
    CHECK(cfg.jobs[i].spec.workload_per_client == stock[i].spec.workload_per_client);
    CHECK(cfg.jobs[i].spec.public_constraint == stock[i].spec.public_constraint);
    CHECK(cfg.jobs[i].spec.private_constraint == stock[i].spec.private_constraint);
    CHECK(cfg.jobs[i].model_size == stock[i].model_size);
  }
}

TEST_CASE("trace files round-trip") {
  TraceGenParams params;
  params.seed = 9;
  params.clients = 50;
  auto trace = generate_trace(params);
  std::string path = "test_trace_roundtrip.jsonl";
  save_trace(path, trace);
  auto loaded = load_trace(path);
  REQUIRE(loaded.size() == trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(loaded[i].info.client_id == trace[i].info.client_id);
    CHECK(loaded[i].info.public_attrs == trace[i].info.public_attrs);
    CHECK(loaded[i].info.private_attrs == trace[i].info.private_attrs);
    CHECK(loaded[i].info.avail_start == trace[i].info.avail_start);
    CHECK(loaded[i].info.avail_end == trace[i].info.avail_end);
    CHECK(loaded[i].region == trace[i].region);
  }
  std::remove(path.c_str());
}

TEST_CASE("static partition smaller than demand stalls into a FAILED run") {
  auto cfg = zero_latency_config();
  cfg.mode = SimMode::kStaticPartition;
  cfg.duration_limit = 600'000;
  // demand 4 but only 3 eligible clients exist
  cfg.jobs = {make_job(0, 1, 4, 10.0)};
  std::vector<TraceRecord> trace;
  for (int i = 0; i < 3; ++i)
    trace.push_back(make_trace_client("c" + std::to_string(i), 1'000, 50'000));
  auto out = run_simulation(cfg, trace);
  CHECK(out.report.failed);
  CHECK(out.report.jobs_finished == 0);
  CHECK(out.report.bindings == 3);
  CHECK(audit_log(out.log.events()).empty());
}
