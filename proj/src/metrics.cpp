#include <algorithm>
#include <map>
#include <set>

#include "fedsched/domain/attributes.hpp"
#include "fedsched/sim/metrics.hpp"

namespace fedsched {

using nlohmann::json;

namespace {

using RoundKey = std::pair<std::string, int>;

std::string field_str(const LogEvent& e, const char* name) {
  return e.fields.value(name, std::string());
}

}  // namespace

json MetricsReport::to_json() const {
  json per_job = json::object();
  for (const auto& [id, jct] : per_job_jct_s) per_job[id] = jct;
  return json{{"failed", failed},
              {"num_clients", num_clients},
              {"jobs_total", jobs_total},
              {"jobs_finished", jobs_finished},
              {"bindings", bindings},
              {"tasks_done", tasks_done},
              {"tasks_failed", tasks_failed},
              {"makespan_s", makespan_s},
              {"resource_utilization", resource_utilization},
              {"throughput", throughput},
              {"avg_jct_s", avg_jct_s},
              {"request_completion_s", request_completion_s},
              {"execution_completion_s", execution_completion_s},
              {"failure_rate", failure_rate},
              {"per_job_jct_s", per_job},
              {"allocation_ledger", allocation_ledger}};
}

MetricsReport compute_metrics(const std::vector<LogEvent>& log) {
  MetricsReport r;
  std::map<std::string, TimeMs> registered_at, finished_at;
  std::map<RoundKey, TimeMs> requested_at, closed_at;
  std::map<std::pair<std::string, RoundKey>, TimeMs> bound_at;  // (client, (job, round))
  std::map<RoundKey, int> round_amounts;
  double participation_ms = 0;
  double request_wait_ms = 0;
  long long closed_rounds = 0;
  double exec_ms = 0;
  long long results = 0;
  TimeMs last_t = 0;
  TimeMs end_t = -1;
  bool finished_flag = false;

  for (const auto& e : log) {
    last_t = std::max(last_t, e.t);
    if (e.kind == "client_arrive") {
      r.num_clients += 1;
    } else if (e.kind == "job_register") {
      registered_at[field_str(e, "job_id")] = e.t;
      r.jobs_total += 1;
    } else if (e.kind == "job_request") {
      requested_at[{field_str(e, "job_id"), e.fields.at("round").get<int>()}] = e.t;
    } else if (e.kind == "demand_met" || e.kind == "end_request") {
      RoundKey key{field_str(e, "job_id"), e.fields.at("round").get<int>()};
      closed_at[key] = e.t;
      round_amounts[key] = e.fields.value("amount", 0);
      auto it = requested_at.find(key);
      if (it != requested_at.end()) {
        request_wait_ms += static_cast<double>(e.t - it->second);
        ++closed_rounds;
      }
    } else if (e.kind == "round_result") {
      RoundKey key{field_str(e, "job_id"), e.fields.at("round").get<int>()};
      auto it = closed_at.find(key);
      if (it != closed_at.end()) {
        exec_ms += static_cast<double>(e.t - it->second);
        ++results;
      }
    } else if (e.kind == "job_finish") {
      finished_at[field_str(e, "job_id")] = e.t;
      r.jobs_finished += 1;
    } else if (e.kind == "bound") {
      r.bindings += 1;
      bound_at[{field_str(e, "client_id"),
                {field_str(e, "job_id"), e.fields.at("round").get<int>()}}] = e.t;
    } else if (e.kind == "task_done") {
      r.tasks_done += 1;
      auto it = bound_at.find({field_str(e, "client_id"),
                               {field_str(e, "job_id"), e.fields.at("round").get<int>()}});
      if (it != bound_at.end()) participation_ms += static_cast<double>(e.t - it->second);
    } else if (e.kind == "task_fail") {
      r.tasks_failed += 1;
    } else if (e.kind == "run_end") {
      end_t = e.t;
      finished_flag = e.fields.value("finished", false);
    }
  }

  r.failed = !finished_flag;
  TimeMs makespan = end_t >= 0 ? end_t : last_t;
  r.makespan_s = ms_to_sec(makespan);
  if (r.makespan_s > 0) {
    r.throughput = static_cast<double>(r.bindings) / r.makespan_s;
    if (r.num_clients > 0)
      r.resource_utilization =
          participation_ms / 1000.0 / (static_cast<double>(r.num_clients) * r.makespan_s);
  }
  double jct_total = 0;
  for (const auto& [job, t_fin] : finished_at) {
    auto it = registered_at.find(job);
    if (it == registered_at.end()) continue;
    double jct = ms_to_sec(t_fin - it->second);
    r.per_job_jct_s[job] = jct;
    jct_total += jct;
  }
  if (!r.per_job_jct_s.empty()) r.avg_jct_s = jct_total / static_cast<double>(r.per_job_jct_s.size());
  if (closed_rounds > 0) r.request_completion_s = request_wait_ms / 1000.0 / closed_rounds;
  if (results > 0) r.execution_completion_s = exec_ms / 1000.0 / results;
  if (r.tasks_done + r.tasks_failed > 0)
    r.failure_rate = static_cast<double>(r.tasks_failed) /
                     static_cast<double>(r.tasks_done + r.tasks_failed);

  json ledger = json::object();
  for (const auto& [key, amount] : round_amounts)
    ledger[key.first][std::to_string(key.second)] = amount;
  r.allocation_ledger = std::move(ledger);
  return r;
}

std::vector<std::string> audit_log(const std::vector<LogEvent>& log) {
  std::vector<std::string> violations;
  auto complain = [&](std::string msg) {
    if (violations.size() < 100) violations.push_back(std::move(msg));
  };

  std::map<std::string, AttributeMap> public_attrs, private_attrs;
  std::map<std::string, Constraint> public_cons, private_cons;
  std::map<std::string, int> total_rounds;
  std::map<RoundKey, int> round_demand;
  std::map<RoundKey, std::set<std::string>> round_clients;
  std::map<RoundKey, int> round_done;
  std::map<std::string, int> last_round;
  struct Binding {
    TimeMs bound_at;
    int terminals = 0;
    TimeMs terminal_at = -1;
  };
  std::map<std::pair<std::string, RoundKey>, Binding> bindings;
  std::map<std::string, std::vector<std::pair<TimeMs, TimeMs>>> busy;  // client intervals
  std::map<std::string, TimeMs> active_since;
  bool finished_flag = false;
  TimeMs end_t = 0;

  for (const auto& e : log) {
    if (e.kind == "client_arrive") {
      std::string id = field_str(e, "client_id");
      public_attrs[id] = AttributeMap::from_json(e.fields.at("public_attrs"));
      private_attrs[id] = AttributeMap::from_json(e.fields.at("private_attrs"));
    } else if (e.kind == "job_register") {
      std::string id = field_str(e, "job_id");
      public_cons[id] = Constraint::from_json(e.fields.at("public_constraint"));
      private_cons[id] = Constraint::from_json(e.fields.at("private_constraint"));
      total_rounds[id] = e.fields.value("total_round", 0);
      last_round[id] = 0;
    } else if (e.kind == "job_request") {
      std::string id = field_str(e, "job_id");
      int round = e.fields.at("round").get<int>();
      round_demand[{id, round}] = e.fields.at("demand").get<int>();
      if (round != last_round[id] + 1)
        complain("job " + id + " round " + std::to_string(round) + " does not follow " +
                 std::to_string(last_round[id]));
      if (total_rounds.count(id) && round > total_rounds[id])
        complain("job " + id + " exceeded total_round");
      last_round[id] = round;
    } else if (e.kind == "bound") {
      std::string client = field_str(e, "client_id");
      std::string job = field_str(e, "job_id");
      int round = e.fields.at("round").get<int>();
      RoundKey key{job, round};
      if (!public_attrs.count(client)) {
        complain("bound for unknown client " + client);
        continue;
      }
      if (!public_cons.count(job)) {
        complain("bound for unknown job " + job);
        continue;
      }
      if (!satisfies(public_attrs[client], public_cons[job]))
        complain("public constraint violated: " + client + " -> " + job);
      if (!satisfies(private_attrs[client], private_cons[job]))
        complain("private constraint violated: " + client + " -> " + job);
      if (!round_clients[key].insert(client).second)
        complain("duplicate binding in round: " + client + " -> " + job);
      if (round_clients[key].size() > static_cast<std::size_t>(round_demand[key]))
        complain("round over-allocated: " + job + " round " + std::to_string(round));
      if (active_since.count(client))
        complain("client " + client + " bound while already active");
      active_since[client] = e.t;
      bindings[{client, key}] = Binding{e.t};
    } else if (e.kind == "task_done" || e.kind == "task_fail") {
      std::string client = field_str(e, "client_id");
      std::string job = field_str(e, "job_id");
      int round = e.fields.at("round").get<int>();
      RoundKey key{job, round};
      auto it = bindings.find({client, key});
      if (it == bindings.end()) {
        complain("terminal without binding: " + client + " -> " + job);
        continue;
      }
      it->second.terminals += 1;
      it->second.terminal_at = e.t;
      if (it->second.terminals > 1) complain("double terminal: " + client + " -> " + job);
      auto as = active_since.find(client);
      if (as != active_since.end()) {
        busy[client].emplace_back(as->second, e.t);
        active_since.erase(as);
      }
      if (e.kind == "task_done") round_done[key] += 1;
    } else if (e.kind == "demand_met" || e.kind == "end_request") {
      std::string job = field_str(e, "job_id");
      int round = e.fields.at("round").get<int>();
      RoundKey key{job, round};
      int amount = e.fields.value("amount", 0);
      if (amount != static_cast<int>(round_clients[key].size()))
        complain("amount mismatch at close: " + job + " round " + std::to_string(round));
      if (amount > round_demand[key]) complain("amount exceeds demand: " + job);
    } else if (e.kind == "round_result") {
      std::string job = field_str(e, "job_id");
      int round = e.fields.at("round").get<int>();
      int count = e.fields.at("count").get<int>();
      if (count != round_done[{job, round}])
        complain("result count mismatch: " + job + " round " + std::to_string(round));
    } else if (e.kind == "run_end") {
      finished_flag = e.fields.value("finished", false);
      end_t = e.t;
    }
  }

  if (finished_flag) {
    for (const auto& [key, b] : bindings)
      if (b.terminals == 0)
        complain("binding without terminal in a finished run: " + key.first);
  }
  (void)end_t;
  // at most one task at a time: busy intervals per client must not overlap
  for (auto& [client, intervals] : busy) {
    std::sort(intervals.begin(), intervals.end());
    for (std::size_t i = 1; i < intervals.size(); ++i)
      if (intervals[i].first < intervals[i - 1].second)
        complain("overlapping tasks for client " + client);
  }
  return violations;
}

}  // namespace fedsched
