#include "fedsched/sim/config.hpp"

#include <stdexcept>

#include "fedsched/util/toml.hpp"

namespace fedsched {

using nlohmann::json;

namespace {

TimeMs ms_field(const json& j, const std::string& sec_ms, const std::string& sec_s,
                TimeMs fallback) {
  if (j.contains(sec_ms)) return j.at(sec_ms).get<TimeMs>();
  if (j.contains(sec_s)) return sec_to_ms(j.at(sec_s).get<double>());
  return fallback;
}

}  // namespace


std::string to_string(SimMode m) {
  switch (m) {
    case SimMode::kManagedOnline: return "managed_online";
    case SimMode::kManagedSmallBatch: return "managed_smallbatch";
    case SimMode::kStaticPartition: return "static_partition";
    case SimMode::kPureRandom: return "pure_random";
  }
  return "unknown";
}

std::optional<SimMode> sim_mode_from_string(const std::string& s) {
  if (s == "managed_online") return SimMode::kManagedOnline;
  if (s == "managed_smallbatch") return SimMode::kManagedSmallBatch;
  if (s == "static_partition") return SimMode::kStaticPartition;
  if (s == "pure_random") return SimMode::kPureRandom;
  return std::nullopt;
}

json JobSetup::to_json() const {
  return json{{"arrival", arrival},
              {"total_round", spec.total_round},
              {"est_demand", spec.est_demand},
              {"demand", demand},
              {"workload", spec.workload_per_client},
              {"model_size", model_size},
              {"public_constraint", spec.public_constraint.to_json()},
              {"private_constraint", spec.private_constraint.to_json()},
              {"job_ip", job_ip},
              {"port", port}};
}

JobSetup JobSetup::from_json(const json& j) {
  JobSetup s;
  s.arrival = ms_field(j, "arrival", "arrival_s", 0);
  s.spec.total_round = j.at("total_round").get<int>();
  s.demand = j.at("demand").get<int>();
  s.spec.est_demand = j.value("est_demand", s.demand);
  s.spec.workload_per_client = j.value("workload", 1.0);
  s.model_size = j.value("model_size", 16);
  if (j.contains("public_constraint"))
    s.spec.public_constraint = Constraint::from_json(j["public_constraint"]);
  if (j.contains("private_constraint"))
    s.spec.private_constraint = Constraint::from_json(j["private_constraint"]);
  s.job_ip = j.value("job_ip", std::string("10.0.0.1"));
  s.port = j.value("port", 50061);
  return s;
}

json ExperimentConfig::to_json() const {
  json jobs_json = json::array();
  for (const auto& jb : jobs) jobs_json.push_back(jb.to_json());
  return json{{"experiment",
               {{"seed", seed},
                {"mode", to_string(mode)},
                {"duration_limit_ms", duration_limit},
                {"latency_ms", latency},
                {"backoff_ms", backoff},
                {"model_update_delay_ms", model_update_delay},
                {"regist_retry_ms", regist_retry},
                {"round_deadline_ms", round_deadline}}},
              {"scheduler", {{"policy", policy}, {"tick_ms", sched_tick}}},
              {"agent", {{"plugin", binding_plugin}}},
              {"admission",
               {{"enabled", admission.admission_enabled},
                {"cap_fraction", admission.cap_fraction},
                {"grace_ms", admission.bootstrap_grace}}},
              {"binding",
               {{"shards", shards},
                {"offers_per_checkin", binding.offers_per_checkin},
                {"offer_validity_ms", binding.offer_validity},
                {"window_ms", binding.window},
                {"window_capacity", binding.window_capacity},
                {"cache_ttl_ms", binding.cache_ttl}}},
              {"dataplane",
               {{"parents", tree_parents},
                {"plan_ttl_ms", plan_ttl},
                {"flush_period_ms", flush_period},
                {"inter_server_latency_ms", inter_server_latency}}},
              {"jobs", jobs_json}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("experiment")) {
    const auto& e = j["experiment"];
    cfg.seed = e.value("seed", (std::uint64_t)1);
    if (e.contains("mode")) {
      auto m = sim_mode_from_string(e["mode"].get<std::string>());
      if (!m) throw std::runtime_error("unknown mode: " + e["mode"].get<std::string>());
      cfg.mode = *m;
    }
    cfg.duration_limit = ms_field(e, "duration_limit_ms", "duration_limit_s", cfg.duration_limit);
    cfg.latency = ms_field(e, "latency_ms", "latency_s", cfg.latency);
    cfg.backoff = ms_field(e, "backoff_ms", "backoff_s", cfg.backoff);
    cfg.model_update_delay =
        ms_field(e, "model_update_delay_ms", "model_update_delay_s", cfg.model_update_delay);
    cfg.regist_retry = ms_field(e, "regist_retry_ms", "regist_retry_s", cfg.regist_retry);
    cfg.round_deadline = ms_field(e, "round_deadline_ms", "round_deadline_s", cfg.round_deadline);
  }
  if (j.contains("scheduler")) {
    const auto& s = j["scheduler"];
    cfg.policy = s.value("policy", cfg.policy);
    cfg.sched_tick = ms_field(s, "tick_ms", "tick_s", cfg.sched_tick);
  }
  if (j.contains("agent")) cfg.binding_plugin = j["agent"].value("plugin", cfg.binding_plugin);
  if (j.contains("admission")) {
    const auto& a = j["admission"];
    cfg.admission.admission_enabled = a.value("enabled", true);
    cfg.admission.cap_fraction = a.value("cap_fraction", 0.25);
    cfg.admission.bootstrap_grace = ms_field(a, "grace_ms", "grace_s", 60'000);
  }
  if (j.contains("binding")) {
    const auto& b = j["binding"];
    cfg.shards = b.value("shards", 1);
    cfg.binding.offers_per_checkin = b.value("offers_per_checkin", (std::size_t)3);
    cfg.binding.offer_validity = ms_field(b, "offer_validity_ms", "offer_validity_s", 10'000);
    cfg.binding.window = ms_field(b, "window_ms", "window_s", 300'000);
    cfg.binding.window_capacity = b.value("window_capacity", (std::size_t)10'000);
    cfg.binding.cache_ttl = ms_field(b, "cache_ttl_ms", "cache_ttl_s", 30'000);
  }
  if (j.contains("dataplane")) {
    const auto& d = j["dataplane"];
    if (d.contains("parents")) cfg.tree_parents = d["parents"].get<std::vector<int>>();
    cfg.plan_ttl = ms_field(d, "plan_ttl_ms", "plan_ttl_s", 60'000);
    cfg.flush_period = ms_field(d, "flush_period_ms", "flush_period_s", 5'000);
    cfg.inter_server_latency =
        ms_field(d, "inter_server_latency_ms", "inter_server_latency_s", 20);
  }
  if (j.contains("jobs"))
    for (const auto& jj : j["jobs"]) cfg.jobs.push_back(JobSetup::from_json(jj));
  return cfg;
}

ExperimentConfig ExperimentConfig::from_toml_file(const std::string& path) {
  return from_json(toml::parse_file(path));
}

std::vector<JobSetup> default_job_mix() {
  auto make = [](TimeMs arrival, int rounds, int demand, double workload, Constraint pub,
                 Constraint priv, int port) {
    JobSetup s;
    s.arrival = arrival;
    s.spec.total_round = rounds;
    s.spec.est_demand = demand;
    s.spec.public_constraint = std::move(pub);
    s.spec.private_constraint = std::move(priv);
    s.spec.workload_per_client = workload;
    s.demand = demand;
    s.model_size = 2;
    s.port = port;
    return s;
  };
  // three tiers: loose / medium / strict; private constraints bite everywhere
  return {
      make(200, 6, 40, 7, Constraint{{"cpu_f", 1}}, Constraint{{"dataset_size", 1300}}, 50061),
      make(400, 6, 20, 7, Constraint{{"cpu_f", 2}}, Constraint{{"dataset_size", 700}}, 50062),
      make(600, 6, 16, 9, Constraint{{"cpu_f", 4}}, Constraint{{"sample_quality", 0.35}}, 50063),
      make(800, 6, 10, 9, Constraint{{"cpu_f", 6}, {"ram", 4096}},
           Constraint{{"sample_quality", 0.3}}, 50064),
      make(1'000, 6, 6, 12, Constraint{{"cpu_f", 8}, {"ram", 4096}},
           Constraint{{"sample_quality", 0.5}}, 50065),
  };
}

}  // namespace fedsched
