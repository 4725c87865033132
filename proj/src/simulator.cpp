#include "fedsched/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <stdexcept>

#include "fedsched/agent/client_agent.hpp"
#include "fedsched/control/client_manager.hpp"
#include "fedsched/control/job_manager.hpp"
#include "fedsched/control/scheduler.hpp"
#include "fedsched/dataplane/tree.hpp"
#include "fedsched/sim/baselines.hpp"
#include "fedsched/sim/event_queue.hpp"
#include "fedsched/util/rng.hpp"

namespace fedsched {
namespace {

TimeMs transfer_ms(double units, double bandwidth) {
  return (TimeMs)std::llround(units / bandwidth * 1000.0);
}

TimeMs exec_duration_ms(double workload, double speed) {
  return (TimeMs)std::llround(workload / speed * 1000.0);
}

struct JobActorState {
  JobSetup setup;
  std::string job_id;
  int round = 0;
  int outstanding = 0;          // bound tasks without a terminal yet
  bool allocation_closed = false;  // EXECUTING, waiting for stragglers
  bool registered = false;
  bool finished = false;
};

struct AgentActorState {
  ClientInfo info;
  std::string region;
  int home_leaf = 0;
  int assigned_job = -1;  // static partition
  bool active = false;
  std::uint64_t epoch = 0;  // bumps on depart, voiding scheduled completions
  std::unique_ptr<ClientAgent> agent;  // managed modes
  std::uint64_t pick_counter = 0;      // pure-random draw index
};

class Simulation : public JobEventListener {
 public:
  Simulation(const ExperimentConfig& cfg, const std::vector<TraceRecord>& trace)
      : cfg_(cfg),
        trace_(trace),
        rng_(cfg.seed),
        reducer_(std::make_shared<FedAvgReducer>()),
        tree_(cfg.tree_parents, reducer_, TreeOptions{cfg.plan_ttl, cfg.flush_period, 64}),
        router_((std::size_t)std::max(1, cfg.shards)) {
    managed_ = cfg_.mode == SimMode::kManagedOnline || cfg_.mode == SimMode::kManagedSmallBatch;
    std::vector<ClientWindowStore*> window_ptrs;
    if (managed_) {
      for (std::size_t s = 0; s < router_.shards(); ++s) {
        windows_.push_back(
            std::make_unique<ClientWindowStore>(cfg_.binding.window, cfg_.binding.window_capacity));
        caches_.push_back(std::make_unique<ClientCache>(cfg_.binding.cache_ttl));
        window_ptrs.push_back(windows_.back().get());
      }
      auto plugin = make_policy(cfg_.policy, cfg_.seed);
      bool want_small = cfg_.mode == SimMode::kManagedSmallBatch;
      if (want_small != (plugin->mode() == SchedMode::kSmallBatch))
        throw std::invalid_argument("policy '" + cfg_.policy + "' does not match mode " +
                                    to_string(cfg_.mode));
      scheduler_ = std::make_unique<Scheduler>(jobs_, window_ptrs, std::move(plugin));
      binding_plugin_ = make_binding_plugin(cfg_.binding_plugin);
    }
    JobManagerConfig admission = cfg_.admission;
    admission.admission_enabled = managed_ && cfg_.admission.admission_enabled;
    job_manager_ =
        std::make_unique<JobManager>(jobs_, scheduler_.get(), window_ptrs, admission);
    job_manager_->set_listener(this);
    if (managed_) {
      for (std::size_t s = 0; s < router_.shards(); ++s)
        shards_.push_back(std::make_unique<ClientManager>((int)s, jobs_, *job_manager_,
                                                          scheduler_.get(), ledger_, *windows_[s],
                                                          *caches_[s], cfg_.binding));
    }
  }

  RunOutput run();

  void on_demand_met(const std::string& job_id, TimeMs now) override {
    auto it = job_index_.find(job_id);
    if (it == job_index_.end()) return;
    int idx = it->second;
    JobActorState& j = jobs_state_[idx];
    auto rec = jobs_.get(job_id);
    int amount = rec ? rec->amount : 0;
    int round = j.round;
    j.allocation_closed = true;
    // same-time, later-seq: the in-flight accept logs its binding first and
    // finishes its bookkeeping before the round can close
    queue_.schedule(now, EventKind::kJobEvent, [this, idx, job_id, round, amount] {
      log_.append(queue_.now(), "demand_met",
                  {{"job_id", job_id}, {"round", round}, {"amount", amount}});
      maybe_close_round(idx);
    });
    // straggler cutoff: close the round even if some bound clients never
    // report; their uploads land LATE at the data plane and are dropped
    queue_.schedule(now + cfg_.round_deadline, EventKind::kJobEvent,
                    [this, idx, round] { force_close_round(idx, round); });
  }

 private:
  bool live() const { return pending_arrivals_ > 0 || active_agents_ > 0; }
  int leaf_for_region(const std::string& region) const;
  Contribution make_contribution(const AgentActorState& a, const std::string& job_id, int round);

  void do_register(int j);
  void request_round(int j);
  void maybe_close_round(int j);
  void force_close_round(int j, int round);
  void close_round_now(int j);
  void task_terminal(const std::string& job_id, int round);

  void dispatch(int i, ClientAgent::Action action);
  void process_checkin(int i);
  void process_accept(int i, const TaskOffer& offer);
  void begin_task(int i, const TaskOffer& offer);
  void complete_task(int i, std::uint64_t epoch, const std::string& job_id, int round);
  void fail_task_event(int i, std::uint64_t epoch, const std::string& job_id, int round);

  void baseline_attempt(int i);
  void baseline_handshake(int i, int job_idx);

  void client_arrive(int i);
  void client_depart(int i);
  void serve_shards(TimeMs now);
  void sched_tick();
  void flush_tick();

  const ExperimentConfig& cfg_;
  const std::vector<TraceRecord>& trace_;
  Rng rng_;

  JobStore jobs_;
  BindingLedger ledger_;
  std::shared_ptr<Reducer> reducer_;
  AggregationTree tree_;
  ShardRouter router_;
  std::vector<std::unique_ptr<ClientWindowStore>> windows_;
  std::vector<std::unique_ptr<ClientCache>> caches_;
  std::unique_ptr<Scheduler> scheduler_;
  std::unique_ptr<JobManager> job_manager_;
  std::vector<std::unique_ptr<ClientManager>> shards_;
  std::unique_ptr<BindingPlugin> binding_plugin_;

  EventQueue queue_;
  EventLog log_;
  bool managed_ = false;

  std::vector<JobActorState> jobs_state_;
  std::map<std::string, int> job_index_;
  std::vector<AgentActorState> agents_;
  std::map<std::string, int> agent_index_;
  StaticAssignment static_assignment_;

  int pending_arrivals_ = 0;
  int active_agents_ = 0;
  int jobs_finished_ = 0;
};

int Simulation::leaf_for_region(const std::string& region) const {
  const auto& leaves = tree_.leaves();
  if (leaves.empty()) return tree_.root();
  std::size_t idx;
  if (!region.empty() && region[0] == 'r') {
    idx = (std::size_t)std::strtoul(region.c_str() + 1, nullptr, 10);
  } else {
    idx = fnv1a64(region);
  }
  return leaves[idx % leaves.size()];
}

Contribution Simulation::make_contribution(const AgentActorState& a, const std::string& job_id,
                                           int round) {
  Contribution c;
  auto j = job_index_.find(job_id);
  int dim = j != job_index_.end() ? jobs_state_[j->second].setup.model_size : 16;
  Rng r = rng_.fork("contrib:" + a.info.client_id + ":" + job_id + ":" + std::to_string(round));
  c.update.resize(dim);
  for (int k = 0; k < dim; ++k) c.update[k] = r.uniform(-1.0, 1.0);
  auto ds = a.info.private_attrs.get("dataset_size");
  c.weight = ds ? *ds : 1.0;  // weight = local sample count
  return c;
}

// ---------------- job actors ----------------

void Simulation::do_register(int j) {
  JobActorState& job = jobs_state_[j];
  TimeMs now = queue_.now();
  auto result = job_manager_->job_regist(job.setup.spec, job.setup.job_ip, job.setup.port, now);
  if (!result.ack) {
    log_.append(now, "job_rejected", {{"port", job.setup.port}});
    if (live())
      queue_.schedule(now + cfg_.regist_retry, EventKind::kJobEvent,
                      [this, j] { do_register(j); });
    return;
  }
  job.job_id = result.job_id;
  job.registered = true;
  job_index_[job.job_id] = j;
  log_.append(now, "job_register",
              {{"job_id", job.job_id},
               {"total_round", job.setup.spec.total_round},
               {"est_demand", job.setup.spec.est_demand},
               {"demand", job.setup.demand},
               {"public_constraint", job.setup.spec.public_constraint.to_json()},
               {"private_constraint", job.setup.spec.private_constraint.to_json()}});
  request_round(j);
}

void Simulation::request_round(int j) {
  JobActorState& job = jobs_state_[j];
  if (job.finished) return;
  TimeMs now = queue_.now();
  if (!job_manager_->job_request(job.job_id, job.setup.demand, now)) return;
  job.round += 1;
  job.allocation_closed = false;
  job.outstanding = 0;
  ExecPlan plan;
  plan.job_id = job.job_id;
  plan.round = job.round;
  plan.payload.assign((std::size_t)job.setup.model_size, (std::uint8_t)(job.round & 0xff));
  tree_.publish_plan(now, std::move(plan));
  log_.append(now, "job_request",
              {{"job_id", job.job_id}, {"round", job.round}, {"demand", job.setup.demand}});
  if (managed_ && scheduler_->mode() == SchedMode::kSmallBatch) serve_shards(now);
}

void Simulation::maybe_close_round(int j) {
  JobActorState& job = jobs_state_[j];
  if (!job.registered || job.finished) return;
  if (!job.allocation_closed || job.outstanding > 0) return;
  close_round_now(j);
}

void Simulation::force_close_round(int j, int round) {
  JobActorState& job = jobs_state_[j];
  if (!job.registered || job.finished) return;
  if (job.round != round || !job.allocation_closed) return;  // already closed or moved on
  close_round_now(j);
}

void Simulation::close_round_now(int j) {
  JobActorState& job = jobs_state_[j];
  job.allocation_closed = false;  // guards against a double close
  TimeMs now = queue_.now();
  tree_.close_round(now, job.job_id, job.round);
  auto result = tree_.get_round_result(job.job_id, job.round);
  log_.append(now, "round_result",
              {{"job_id", job.job_id}, {"round", job.round}, {"count", result.count}});
  if (job.round < job.setup.spec.total_round) {
    queue_.schedule(now + cfg_.model_update_delay, EventKind::kJobEvent,
                    [this, j] { request_round(j); });
  } else {
    job_manager_->job_finish(job.job_id, now);
    log_.append(now, "job_finish", {{"job_id", job.job_id}});
    job.finished = true;
    ++jobs_finished_;
  }
}

void Simulation::task_terminal(const std::string& job_id, int round) {
  auto it = job_index_.find(job_id);
  if (it == job_index_.end()) return;
  JobActorState& job = jobs_state_[it->second];
  if (job.round != round) return;  // straggler from a force-closed round
  job.outstanding -= 1;
  maybe_close_round(it->second);
}

// ---------------- managed agents ----------------

void Simulation::dispatch(int i, ClientAgent::Action action) {
  TimeMs now = queue_.now();
  if (std::holds_alternative<ClientAgent::SendCheckin>(action)) {
    queue_.schedule(now + cfg_.latency, EventKind::kCheckin, [this, i] { process_checkin(i); });
  } else if (auto* accept = std::get_if<ClientAgent::SendAccept>(&action)) {
    TaskOffer offer = accept->offer;
    queue_.schedule(now + cfg_.latency, EventKind::kAccept,
                    [this, i, offer] { process_accept(i, offer); });
  } else if (auto* start = std::get_if<ClientAgent::StartTask>(&action)) {
    begin_task(i, start->offer);
  } else if (auto* backoff = std::get_if<ClientAgent::Backoff>(&action)) {
    queue_.schedule(now + backoff->delay, EventKind::kCheckin, [this, i] {
      AgentActorState& a = agents_[i];
      if (!a.active) return;
      dispatch(i, a.agent->on_available(queue_.now()));
    });
  }
}

void Simulation::process_checkin(int i) {
  AgentActorState& a = agents_[i];
  if (!a.active) return;
  TimeMs now = queue_.now();
  ClientManager& shard = *shards_[router_.route(a.info.client_id)];
  CheckInResponse resp = shard.client_checkin(a.info, now);
  if (resp.deferred) return;  // parked in the small-batch cache
  auto offers = resp.offers;
  queue_.schedule(now + cfg_.latency, EventKind::kCheckin, [this, i, offers] {
    AgentActorState& a2 = agents_[i];
    if (!a2.active) return;
    dispatch(i, a2.agent->on_offers(queue_.now(), offers));
  });
}

void Simulation::process_accept(int i, const TaskOffer& offer) {
  AgentActorState& a = agents_[i];
  if (!a.active) return;
  TimeMs now = queue_.now();
  ClientManager& shard = *shards_[router_.route(a.info.client_id)];
  BindResult result = shard.client_accept(a.info.client_id, offer.job_id, now);
  BindStatus status = result.status;
  if (status == BindStatus::kBound) {
    log_.append(now, "bound",
                {{"client_id", a.info.client_id},
                 {"job_id", offer.job_id},
                 {"round", offer.round}});
    auto it = job_index_.find(offer.job_id);
    if (it != job_index_.end()) jobs_state_[it->second].outstanding += 1;
  }
  std::string job_id = offer.job_id;
  queue_.schedule(now + cfg_.latency, EventKind::kAccept, [this, i, status, job_id] {
    AgentActorState& a2 = agents_[i];
    if (!a2.active) return;
    dispatch(i, a2.agent->on_bind_result(queue_.now(), status, job_id));
  });
}

void Simulation::fail_task_event(int i, std::uint64_t epoch, const std::string& job_id,
                                 int round) {
  AgentActorState& a = agents_[i];
  if (!a.active || a.epoch != epoch) return;
  TimeMs now = queue_.now();
  ledger_.record_failed(now, a.info.client_id);
  log_.append(now, "task_fail",
              {{"client_id", a.info.client_id}, {"job_id", job_id}, {"round", round}});
  task_terminal(job_id, round);
  if (managed_) {
    dispatch(i, a.agent->on_task_finished(now));
  } else {
    queue_.schedule(now, EventKind::kCheckin, [this, i] { baseline_attempt(i); });
  }
}

void Simulation::begin_task(int i, const TaskOffer& offer) {
  AgentActorState& a = agents_[i];
  TimeMs now = queue_.now();
  auto it = job_index_.find(offer.job_id);
  double model_size = it != job_index_.end() ? jobs_state_[it->second].setup.model_size : 16.0;

  TimeMs fetch_t = now + cfg_.latency;
  auto outcome = tree_.fetch_plan(fetch_t, a.home_leaf, offer.job_id, offer.round);
  std::uint64_t epoch = a.epoch;
  std::string job_id = offer.job_id;
  int round = offer.round;
  if (!std::holds_alternative<ExecPlan>(outcome.result)) {
    queue_.schedule(fetch_t + cfg_.latency, EventKind::kTaskFail,
                    [this, i, epoch, job_id, round] { fail_task_event(i, epoch, job_id, round); });
    return;
  }
  TimeMs hop_cost = outcome.upstream_pulls * 2 * cfg_.inter_server_latency;
  TimeMs plan_at_client =
      fetch_t + hop_cost + cfg_.latency + transfer_ms(model_size, a.info.bandwidth);
  TimeMs done_exec = plan_at_client + exec_duration_ms(offer.workload_per_client, a.info.speed);
  TimeMs upload_at = done_exec + cfg_.latency + transfer_ms(model_size, a.info.bandwidth);
  queue_.schedule(upload_at, EventKind::kTaskDone, [this, i, epoch, job_id, round] {
    complete_task(i, epoch, job_id, round);
  });
}

void Simulation::complete_task(int i, std::uint64_t epoch, const std::string& job_id, int round) {
  AgentActorState& a = agents_[i];
  if (!a.active || a.epoch != epoch) return;  // departed mid-task
  TimeMs now = queue_.now();
  tree_.upload(now, a.home_leaf, job_id, round, make_contribution(a, job_id, round));
  ledger_.record_done(now, a.info.client_id);
  log_.append(now, "task_done",
              {{"client_id", a.info.client_id}, {"job_id", job_id}, {"round", round}});
  task_terminal(job_id, round);
  if (managed_) {
    dispatch(i, a.agent->on_task_finished(now));
  } else {
    queue_.schedule(now, EventKind::kCheckin, [this, i] { baseline_attempt(i); });
  }
}

// ---------------- baseline agents ----------------

void Simulation::baseline_attempt(int i) {
  AgentActorState& a = agents_[i];
  if (!a.active || ledger_.client_active(a.info.client_id)) return;
  TimeMs now = queue_.now();
  int target = -1;
  if (cfg_.mode == SimMode::kStaticPartition) {
    target = a.assigned_job;
    if (target < 0) return;  // unassigned clients idle
  } else {
    // pure random: pick among every job the client has heard of; clients do
    // not know which jobs are actively selecting
    std::vector<int> directory;
    for (std::size_t j = 0; j < jobs_state_.size(); ++j)
      if (jobs_state_[j].registered) directory.push_back((int)j);
    if (directory.empty()) {
      queue_.schedule(now + cfg_.backoff, EventKind::kCheckin,
                      [this, i] { baseline_attempt(i); });
      return;
    }
    Rng pick = rng_.fork("pick:" + a.info.client_id + ":" + std::to_string(a.pick_counter++));
    target = directory[pick.uniform_int(directory.size())];
  }
  queue_.schedule(now + cfg_.latency, EventKind::kAccept,
                  [this, i, target] { baseline_handshake(i, target); });
}

void Simulation::baseline_handshake(int i, int job_idx) {
  AgentActorState& a = agents_[i];
  if (!a.active) return;
  TimeMs now = queue_.now();
  JobActorState& job = jobs_state_[job_idx];
  bool bound = false;
  if (job.registered && !job.finished) {
    auto rec = jobs_.get(job.job_id);
    // the parameter server evaluates both constraint sets itself
    if (rec && rec->state == JobState::kRequesting && rec->amount < rec->demand &&
        satisfies(a.info.public_attrs, rec->public_constraint) &&
        satisfies(a.info.private_attrs, rec->private_constraint) &&
        !ledger_.has_bound(job.job_id, rec->round, a.info.client_id) &&
        !ledger_.client_active(a.info.client_id)) {
      auto new_amount = jobs_.increment_amount(job.job_id);
      if (new_amount) {
        bound = true;
        ledger_.record_bound(now, a.info.client_id, job.job_id, rec->round);
        log_.append(now, "bound",
                    {{"client_id", a.info.client_id},
                     {"job_id", job.job_id},
                     {"round", rec->round}});
        job.outstanding += 1;
        TaskOffer offer;
        offer.job_id = job.job_id;
        offer.round = rec->round;
        offer.workload_per_client = job.setup.spec.workload_per_client;
        if (*new_amount >= rec->demand) job_manager_->handle_demand_met(job.job_id, now);
        queue_.schedule(now + cfg_.latency, EventKind::kAccept, [this, i, offer] {
          AgentActorState& a2 = agents_[i];
          if (!a2.active) return;
          begin_task(i, offer);
        });
      }
    }
  }
  if (!bound) {
    queue_.schedule(now + cfg_.latency + cfg_.backoff, EventKind::kCheckin,
                    [this, i] { baseline_attempt(i); });
  }
}

// ---------------- client lifecycle and ticks ----------------

void Simulation::client_arrive(int i) {
  AgentActorState& a = agents_[i];
  a.active = true;
  --pending_arrivals_;
  ++active_agents_;
  TimeMs now = queue_.now();
  log_.append(now, "client_arrive",
              {{"client_id", a.info.client_id},
               {"public_attrs", a.info.public_attrs.to_json()},
               {"private_attrs", a.info.private_attrs.to_json()},
               {"avail_end", a.info.avail_end},
               {"speed", a.info.speed},
               {"bandwidth", a.info.bandwidth},
               {"region", a.region}});
  if (managed_) {
    dispatch(i, a.agent->on_available(now));
  } else {
    baseline_attempt(i);
  }
}

void Simulation::client_depart(int i) {
  AgentActorState& a = agents_[i];
  TimeMs now = queue_.now();
  auto active_binding = ledger_.active_entry(a.info.client_id);
  if (active_binding) {
    ledger_.record_failed(now, a.info.client_id);
    log_.append(now, "task_fail",
                {{"client_id", a.info.client_id},
                 {"job_id", active_binding->job_id},
                 {"round", active_binding->round}});
    task_terminal(active_binding->job_id, active_binding->round);
  }
  a.epoch += 1;
  a.active = false;
  --active_agents_;
  if (a.agent) a.agent->on_depart(now);
  log_.append(now, "client_depart", {{"client_id", a.info.client_id}});
}

void Simulation::serve_shards(TimeMs now) {
  for (auto& shard : shards_) {
    auto outcome = shard->serve_partition(now);
    for (auto& [client_id, offer] : outcome.deliveries) {
      auto it = agent_index_.find(client_id);
      if (it == agent_index_.end()) continue;
      int i = it->second;
      TaskOffer o = offer;
      queue_.schedule(now + cfg_.latency, EventKind::kCheckin, [this, i, o] {
        AgentActorState& a = agents_[i];
        if (!a.active || a.agent->phase() != ClientAgent::Phase::kAwaitOffers) return;
        dispatch(i, a.agent->on_offers(queue_.now(), {o}));
      });
    }
    for (const auto& client_id : outcome.no_task) {
      auto it = agent_index_.find(client_id);
      if (it == agent_index_.end()) continue;
      int i = it->second;
      queue_.schedule(now + cfg_.latency, EventKind::kCheckin, [this, i] {
        AgentActorState& a = agents_[i];
        if (!a.active || a.agent->phase() != ClientAgent::Phase::kAwaitOffers) return;
        dispatch(i, a.agent->on_offers(queue_.now(), {}));
      });
    }
  }
}

void Simulation::sched_tick() {
  TimeMs now = queue_.now();
  scheduler_->on_tick(now);
  if (scheduler_->mode() == SchedMode::kSmallBatch) {
    serve_shards(now);
    for (auto& shard : shards_) {
      for (const auto& client_id : shard->expire_cache(now)) {
        auto it = agent_index_.find(client_id);
        if (it == agent_index_.end()) continue;
        int i = it->second;
        // cache lifetime elapsed without a task: tell the client to retry
        queue_.schedule(now + cfg_.latency, EventKind::kCheckin, [this, i] {
          AgentActorState& a = agents_[i];
          if (!a.active || a.agent->phase() != ClientAgent::Phase::kAwaitOffers) return;
          dispatch(i, a.agent->on_offers(queue_.now(), {}));
        });
      }
    }
  }
  if (live())
    queue_.schedule(now + cfg_.sched_tick, EventKind::kSchedTick, [this] { sched_tick(); });
}

void Simulation::flush_tick() {
  tree_.flush_all(queue_.now());
  tree_.sweep(queue_.now());
  if (live())
    queue_.schedule(queue_.now() + cfg_.flush_period, EventKind::kFlushTick,
                    [this] { flush_tick(); });
}

RunOutput Simulation::run() {
  jobs_state_.reserve(cfg_.jobs.size());
  for (const auto& setup : cfg_.jobs) {
    JobActorState j;
    j.setup = setup;
    jobs_state_.push_back(std::move(j));
  }
  agents_.reserve(trace_.size());
  for (const auto& rec : trace_) {
    AgentActorState a;
    a.info = rec.info;
    a.region = rec.region;
    a.home_leaf = leaf_for_region(rec.region);
    if (managed_)
      a.agent = std::make_unique<ClientAgent>(rec.info, binding_plugin_.get(),
                                              AgentConfig{cfg_.backoff});
    agent_index_[rec.info.client_id] = (int)agents_.size();
    agents_.push_back(std::move(a));
  }
  if (cfg_.mode == SimMode::kStaticPartition) {
    static_assignment_ = compute_static_assignment(cfg_.jobs, trace_);
    for (auto& a : agents_) a.assigned_job = static_assignment_.job_of(a.info.client_id);
  }

  for (std::size_t i = 0; i < agents_.size(); ++i) {
    ++pending_arrivals_;
    queue_.schedule(agents_[i].info.avail_start, EventKind::kClientArrive,
                    [this, i] { client_arrive((int)i); });
    queue_.schedule(agents_[i].info.avail_end, EventKind::kClientDepart,
                    [this, i] { client_depart((int)i); });
  }
  for (std::size_t j = 0; j < jobs_state_.size(); ++j)
    queue_.schedule(jobs_state_[j].setup.arrival, EventKind::kJobEvent,
                    [this, j] { do_register((int)j); });

  if (managed_)
    queue_.schedule(cfg_.sched_tick, EventKind::kSchedTick, [this] { sched_tick(); });
  queue_.schedule(cfg_.flush_period, EventKind::kFlushTick, [this] { flush_tick(); });

  while (!queue_.empty()) {
    if (jobs_finished_ == (int)jobs_state_.size()) break;
    if (queue_.next_time() > cfg_.duration_limit) break;
    queue_.run_next();
  }
  bool finished = jobs_finished_ == (int)jobs_state_.size();
  log_.append(queue_.now(), "run_end", {{"finished", finished}});

  RunOutput out;
  out.log = std::move(log_);
  out.report = compute_metrics(out.log.events());
  out.final_jobs = jobs_.snapshot();
  return out;
}

}  // namespace

RunOutput run_simulation(const ExperimentConfig& cfg, const std::vector<TraceRecord>& trace) {
  Simulation sim(cfg, trace);
  return sim.run();
}

}  // namespace fedsched
