#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fedsched/sim/baselines.hpp"
#include "fedsched/sim/simulator.hpp"
#include "fedsched/util/toml.hpp"

namespace fs = std::filesystem;
using namespace fedsched;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

RunOutput run_one(const std::string& config_path, const std::string& trace_path) {
  ExperimentConfig cfg = ExperimentConfig::from_toml_file(config_path);
  auto trace = load_trace(trace_path);
  return run_simulation(cfg, trace);
}

void emit_run_outputs(const fs::path& out_dir, const RunOutput& result) {
  fs::create_directories(out_dir);
  write_file(out_dir / "events.jsonl", result.log.to_jsonl());
  write_file(out_dir / "metrics.json", result.report.to_json().dump(2) + "\n");
  std::ostringstream csv;
  csv << "metric,value\n"
      << "resource_utilization," << result.report.resource_utilization << "\n"
      << "throughput," << result.report.throughput << "\n"
      << "avg_jct_s," << result.report.avg_jct_s << "\n"
      << "request_completion_s," << result.report.request_completion_s << "\n"
      << "execution_completion_s," << result.report.execution_completion_s << "\n"
      << "failure_rate," << result.report.failure_rate << "\n"
      << "failed," << (result.report.failed ? 1 : 0) << "\n";
  write_file(out_dir / "metrics.csv", csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-tenant edge ML resource manager simulator"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run one experiment");
  std::string run_config, run_trace, run_out = "out";
  run_cmd->add_option("--config", run_config, "experiment config (TOML)")->required();
  run_cmd->add_option("--trace", run_trace, "client trace (JSONL)")->required();
  run_cmd->add_option("--out", run_out, "output directory");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "run several configs over shared traces");
  std::vector<std::string> cmp_configs, cmp_traces;
  std::string cmp_out = "out";
  cmp_cmd->add_option("--configs", cmp_configs, "config files (one per mode)")
      ->required()
      ->expected(-1);
  cmp_cmd->add_option("--trace", cmp_traces, "trace files (one per client-count setting)")
      ->required()
      ->expected(-1);
  cmp_cmd->add_option("--out", cmp_out, "output directory");

  // gen-trace
  auto* gen_cmd = app.add_subcommand("gen-trace", "generate a synthetic client trace");
  std::uint64_t gen_seed = 1;
  int gen_clients = 1000;
  double gen_span_s = 5400, gen_avail_min_s = 600, gen_avail_max_s = 1500;
  int gen_regions = 8;
  std::string gen_out = "trace.jsonl";
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--clients", gen_clients, "number of clients")->required();
  gen_cmd->add_option("--arrival-span", gen_span_s, "arrival window, seconds");
  gen_cmd->add_option("--avail-min", gen_avail_min_s, "min availability, seconds");
  gen_cmd->add_option("--avail-max", gen_avail_max_s, "max availability, seconds");
  gen_cmd->add_option("--regions", gen_regions, "number of home-leaf regions");
  gen_cmd->add_option("--out", gen_out, "output trace path");

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "re-verify invariants over an event log");
  std::string audit_log_path;
  audit_cmd->add_option("--log", audit_log_path, "events.jsonl to audit")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      auto result = run_one(run_config, run_trace);
      emit_run_outputs(run_out, result);
      auto violations = audit_log(result.log.events());
      std::cout << result.report.to_json().dump(2) << "\n";
      if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "audit: " << v << "\n";
        return 2;
      }
      return 0;
    }
    if (*cmp_cmd) {
      fs::create_directories(cmp_out);
      struct Cell {
        std::string mode;
        MetricsReport report;
      };
      // rows: traces (client-count settings); columns: configs (modes)
      std::vector<std::vector<Cell>> grid;
      std::vector<std::string> mode_names;
      for (std::size_t t = 0; t < cmp_traces.size(); ++t) {
        grid.emplace_back();
        for (const auto& cfg_path : cmp_configs) {
          ExperimentConfig cfg = ExperimentConfig::from_toml_file(cfg_path);
          auto trace = load_trace(cmp_traces[t]);
          auto result = run_simulation(cfg, trace);
          grid.back().push_back(Cell{to_string(cfg.mode), result.report});
          if (t == 0) mode_names.push_back(to_string(cfg.mode));
          fs::path run_dir = fs::path(cmp_out) / (to_string(cfg.mode) + "_" +
                                                  std::to_string(trace.size()) + "c");
          emit_run_outputs(run_dir, result);
        }
      }
      auto metric_csv = [&](const std::string& name, auto getter) {
        std::ostringstream csv;
        csv << "clients";
        for (const auto& m : mode_names) csv << "," << m;
        csv << "\n";
        for (std::size_t t = 0; t < grid.size(); ++t) {
          auto trace = load_trace(cmp_traces[t]);
          csv << trace.size();
          for (const auto& cell : grid[t]) csv << "," << getter(cell.report);
          csv << "\n";
        }
        write_file(fs::path(cmp_out) / (name + ".csv"), csv.str());
      };
      metric_csv("resource_utilization",
                 [](const MetricsReport& r) { return r.resource_utilization; });
      metric_csv("throughput", [](const MetricsReport& r) { return r.throughput; });
      metric_csv("avg_jct_s", [](const MetricsReport& r) { return r.avg_jct_s; });
      metric_csv("request_completion_s",
                 [](const MetricsReport& r) { return r.request_completion_s; });
      metric_csv("execution_completion_s",
                 [](const MetricsReport& r) { return r.execution_completion_s; });
      metric_csv("failure_rate", [](const MetricsReport& r) { return r.failure_rate; });
      std::cout << "wrote per-metric CSVs to " << cmp_out << "\n";
      return 0;
    }
    if (*gen_cmd) {
      TraceGenParams params;
      params.seed = gen_seed;
      params.clients = gen_clients;
      params.arrival_span = sec_to_ms(gen_span_s);
      params.avail_min = sec_to_ms(gen_avail_min_s);
      params.avail_max = sec_to_ms(gen_avail_max_s);
      params.regions = gen_regions;
      save_trace(gen_out, generate_trace(params));
      std::cout << "wrote " << gen_clients << " clients to " << gen_out << "\n";
      return 0;
    }
    if (*audit_cmd) {
      auto events = EventLog::read_jsonl_file(audit_log_path);
      auto violations = audit_log(events);
      auto report = compute_metrics(events);
      std::cout << report.to_json().dump(2) << "\n";
      if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "audit: " << v << "\n";
        return 2;
      }
      std::cout << "audit clean (" << events.size() << " events)\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
