#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fedsched/control/scheduler.hpp"
#include "fedsched/util/rng.hpp"

using namespace fedsched;

namespace {

JobRecord requesting_job(const std::string& id, TimeMs ts, Constraint pub = {},
                         long long attained = 0) {
  JobRecord r;
  r.job_id = id;
  r.time_stamp = ts;
  r.state = JobState::kRequesting;
  r.round = 1;
  r.total_round = 10;
  r.demand = 5;
  r.public_constraint = std::move(pub);
  r.attained_service = attained;
  return r;
}

ClientInfo client_with_cpu(const std::string& id, double cpu) {
  ClientInfo c;
  c.client_id = id;
  c.public_attrs = AttributeMap{{"cpu_f", cpu}};
  c.avail_start = 0;
  c.avail_end = 1'000'000'000;
  return c;
}

}  // namespace

TEST_CASE("fifo: earlier registrations rank first") {
  JobStore store;
  store.put(requesting_job("a", 10'000));
  store.put(requesting_job("b", 20'000));
  Scheduler sched(store, {}, make_policy("fifo", 1));
  sched.on_job_register("a", 10'000);
  sched.on_job_register("b", 20'000);
  CHECK(store.get("a")->score == -10'000.0);
  CHECK(store.get("b")->score == -20'000.0);
  auto order = store.requesting_ids();
  REQUIRE(order.size() == 2);
  CHECK(order[0] == "a");
  // idempotent on re-invocation
  sched.on_job_register("a", 10'000);
  CHECK(store.get("a")->score == -10'000.0);
}

TEST_CASE("fifo: query order equals registration order for random registrations") {
  Rng rng(55);
  JobStore store;
  Scheduler sched(store, {}, make_policy("fifo", 1));
  TimeMs t = 0;
  std::vector<std::string> expected;
  for (int i = 0; i < 50; ++i) {
    t += 1 + (TimeMs)rng.uniform_int(500);
    std::string id = "j" + std::to_string(1000 + i);
    store.put(requesting_job(id, t));
    sched.on_job_register(id, t);
    expected.push_back(id);
  }
  CHECK(store.requesting_ids() == expected);
}

TEST_CASE("random: deterministic under a seed, uniform first-rank frequency") {
  JobStore store;
  for (int i = 0; i < 4; ++i) store.put(requesting_job("j" + std::to_string(i), i));
  auto run_sequence = [&](std::uint64_t seed) {
    Scheduler sched(store, {}, make_policy("random", seed));
    std::vector<double> scores;
    for (int rep = 0; rep < 20; ++rep)
      for (int i = 0; i < 4; ++i) {
        sched.on_job_request("j" + std::to_string(i), rep);
        scores.push_back(store.get("j" + std::to_string(i))->score);
      }
    return scores;
  };
  auto s1 = run_sequence(42), s2 = run_sequence(42), s3 = run_sequence(43);
  CHECK(s1 == s2);
  CHECK(s1 != s3);
  for (double s : s1) {
    CHECK(s >= 0.0);
    CHECK(s < 1.0);
  }

  // each of 4 jobs ranks first with frequency 0.25 +- 0.02 over 10^4 rescores
  Scheduler sched(store, {}, make_policy("random", 7));
  std::map<std::string, int> firsts;
  const int kTrials = 10'000;
  for (int rep = 0; rep < kTrials; ++rep) {
    for (int i = 0; i < 4; ++i) sched.on_job_request("j" + std::to_string(i), rep);
    firsts[store.requesting_ids().front()] += 1;
  }
  for (int i = 0; i < 4; ++i) {
    double freq = firsts["j" + std::to_string(i)] / double(kTrials);
    CHECK(freq == doctest::Approx(0.25).epsilon(0.08));  // 0.25 +- 0.02
    CHECK(std::abs(freq - 0.25) <= 0.02);
  }
}

TEST_CASE("rarity: score is one minus the eligible proportion") {
  JobStore store;
  ClientWindowStore window(300'000, 10'000);
  store.put(requesting_job("all", 0, Constraint{}));
  store.put(requesting_job("none", 1, Constraint{{"cpu_f", 99.0}}));
  store.put(requesting_job("some", 2, Constraint{{"cpu_f", 8.0}}));
  Scheduler sched(store, {&window}, make_policy("rarity", 1));

  // empty window: proportion convention makes every score 1
  sched.on_job_request("all", 0);
  CHECK(store.get("all")->score == 1.0);

  for (int i = 0; i < 6; ++i) window.insert(0, client_with_cpu("lo" + std::to_string(i), 2));
  for (int i = 0; i < 4; ++i) window.insert(0, client_with_cpu("hi" + std::to_string(i), 8));
  sched.on_job_request("all", 10);
  sched.on_job_request("none", 10);
  sched.on_job_request("some", 10);
  CHECK(store.get("all")->score == 0.0);
  CHECK(store.get("none")->score == 1.0);
  CHECK(store.get("some")->score == doctest::Approx(0.6));  // 4 of 10 eligible

  // on_tick rescoring follows window drift
  for (int i = 0; i < 10; ++i) window.insert(1'000, client_with_cpu("hi2" + std::to_string(i), 9));
  sched.on_tick(2'000);
  CHECK(store.get("some")->score == doctest::Approx(1.0 - 14.0 / 20.0));
}

TEST_CASE("fairshare partition: buckets by constraint signature, least-served first") {
  JobStore store;
  Constraint cheap{{"cpu_f", 2.0}};
  Constraint pricey{{"cpu_f", 8.0}};
  store.put(requesting_job("a", 0, cheap, 10));
  store.put(requesting_job("b", 1, cheap, 4));
  store.put(requesting_job("c", 2, pricey, 7));
  Scheduler sched(store, {}, make_policy("fairshare_smallbatch", 1));
  sched.on_job_request("a", 10);
  auto partition = sched.current_partition();
  REQUIRE(partition);
  REQUIRE(partition->size() == 2);
  // group of (a, b): least served (b, attained 4) first; that group also leads
  // because its minimum attained service is lowest
  CHECK((*partition)[0].members == std::vector<std::string>{"b", "a"});
  CHECK((*partition)[1].members == std::vector<std::string>{"c"});
  CHECK((*partition)[0].client_query.str() == "cpu_f>=2");
  CHECK((*partition)[1].client_query.str() == "cpu_f>=8");
}

TEST_CASE("fairshare partition: single job, empty input") {
  JobStore store;
  store.put(requesting_job("only", 0, Constraint{{"ram", 1024.0}}));
  Scheduler sched(store, {}, make_policy("fairshare_smallbatch", 1));
  sched.on_tick(0);
  auto p = sched.current_partition();
  REQUIRE(p);
  REQUIRE(p->size() == 1);
  CHECK((*p)[0].members == std::vector<std::string>{"only"});

  JobStore empty_store;
  Scheduler sched2(empty_store, {}, make_policy("fairshare_smallbatch", 1));
  sched2.on_tick(0);
  REQUIRE(sched2.current_partition());
  CHECK(sched2.current_partition()->empty());
}

TEST_CASE("fairshare partition is a set partition of its input (random job sets)") {
  Rng rng(91);
  for (int trial = 0; trial < 100; ++trial) {
    JobStore store;
    int n = 1 + (int)rng.uniform_int(40);
    std::set<std::string> input;
    for (int i = 0; i < n; ++i) {
      Constraint c;
      if (rng.uniform() < 0.7) c.set_bound("cpu_f", std::floor(rng.uniform(1, 4)) * 2);
      if (rng.uniform() < 0.4) c.set_bound("ram", std::floor(rng.uniform(1, 4)) * 1024);
      std::string id = "j" + std::to_string(i);
      store.put(requesting_job(id, i, c, (long long)rng.uniform_int(50)));
      input.insert(id);
    }
    Scheduler sched(store, {}, make_policy("fairshare_smallbatch", 1));
    sched.on_tick(0);
    auto partition = sched.current_partition();
    REQUIRE(partition);
    std::set<std::string> seen;
    for (const auto& group : *partition) {
      long long prev = -1;
      for (const auto& id : group.members) {
        CHECK(seen.insert(id).second);  // disjoint
        auto rec = store.get(id);
        REQUIRE(rec);
        CHECK(rec->attained_service >= prev);  // least-served first
        prev = rec->attained_service;
        // group query equals the member's lower bounds
        CHECK(group.client_query == Query::from_lower_bounds(rec->public_constraint));
      }
    }
    CHECK(seen == input);  // covering
  }
}

TEST_CASE("partition publication is an atomic snapshot") {
  JobStore store;
  store.put(requesting_job("a", 0));
  Scheduler sched(store, {}, make_policy("fairshare_smallbatch", 1));
  sched.on_tick(0);
  auto before = sched.current_partition();
  store.put(requesting_job("b", 1));
  sched.on_tick(10);
  auto after = sched.current_partition();
  // the old snapshot is unchanged; the new one is a different object
  CHECK(before->size() == 1);
  CHECK(after->size() >= 1);
  CHECK(before != after);
}

TEST_CASE("plugins cannot mutate anything but the score") {
  // a hostile plugin that calls every api surface it can reach
  struct Hostile : PolicyPlugin {
    std::string name() const override { return "hostile"; }
    SchedMode mode() const override { return SchedMode::kOnline; }
    void on_job_request(SchedulerApi& api, const std::string& job_id) override {
      api.exist(job_id);
      api.get_job_size();
      api.get_field(job_id, "demand");
      api.get_field(job_id, "public_constraint");
      api.query("demand>=0");
      api.get_client_size();
      api.get_client_proportion(Constraint{});
      api.get_client_subset_size(*Query::parse(""));
      api.set_score(job_id, 99.0);
    }
  };
  JobStore store;
  auto original = requesting_job("a", 5, Constraint{{"cpu_f", 4.0}}, 7);
  original.demand = 9;
  store.put(original);
  Scheduler sched(store, {}, std::make_unique<Hostile>());
  sched.on_job_request("a", 100);
  auto rec = *store.get("a");
  CHECK(rec.score == 99.0);  // the one allowed mutation
  CHECK(rec.demand == original.demand);
  CHECK(rec.amount == original.amount);
  CHECK(rec.round == original.round);
  CHECK(rec.attained_service == original.attained_service);
  CHECK(rec.public_constraint == original.public_constraint);
  CHECK(rec.state == original.state);
}

TEST_CASE("online ranking is a deterministic function of scores and tie breaks") {
  JobStore store;
  auto a = requesting_job("a", 100);
  auto b = requesting_job("b", 50);
  auto c = requesting_job("c", 50);
  a.score = b.score = c.score = 1.0;
  store.put(a);
  store.put(b);
  store.put(c);
  // equal scores: time_stamp ascending, then id
  auto order = store.requesting_ids();
  CHECK(order == std::vector<std::string>{"b", "c", "a"});
}
