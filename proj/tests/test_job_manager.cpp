#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fedsched/control/job_manager.hpp"
#include "fedsched/util/rng.hpp"

using namespace fedsched;

namespace {

ClientInfo make_client(const std::string& id) {
  ClientInfo c;
  c.client_id = id;
  c.public_attrs = AttributeMap{{"cpu_f", 8.0}};
  c.avail_start = 0;
  c.avail_end = 1'000'000'000;
  return c;
}

JobSpec spec(int rounds, int est_demand) {
  JobSpec s;
  s.total_round = rounds;
  s.est_demand = est_demand;
  s.workload_per_client = 10;
  return s;
}

struct Fixture {
  JobStore store;
  ClientWindowStore window{300'000, 100'000};
  JobManager manager{store, nullptr, {&window}, JobManagerConfig{}};

  void fill_window(int n, TimeMs t = 0) {
    for (int i = 0; i < n; ++i) window.insert(t, make_client("c" + std::to_string(i)));
  }
};

}  // namespace

TEST_CASE("admission: cap = cap_fraction x window size") {
  Fixture f;
  f.fill_window(1000);
  CHECK(f.manager.admission_cap(0) == 250);  // 0.25 x 1000
  auto r = f.manager.job_regist(spec(5, 10), "10.0.0.1", 50051, 0);
  CHECK(r.ack);
  REQUIRE(f.store.get(r.job_id));
  auto rec = *f.store.get(r.job_id);
  CHECK(rec.state == JobState::kRegistered);
  CHECK(rec.round == 0);
  CHECK(rec.amount == 0);
  CHECK(rec.demand == 0);
  CHECK(rec.score == 0.0);
  CHECK(rec.total_demand == 50);  // est_demand x total_round
}

TEST_CASE("admission: bootstrap grace admits on an empty window") {
  Fixture f;
  auto r = f.manager.job_regist(spec(3, 10), "10.0.0.1", 50051, 0);
  CHECK(r.ack);
  // past the grace period an empty window rejects everything
  Fixture g;
  auto r2 = g.manager.job_regist(spec(3, 10), "10.0.0.1", 50051, 61'000);
  CHECK_FALSE(r2.ack);
}

TEST_CASE("admission: rejection leaves no record") {
  Fixture f;
  f.fill_window(20);  // cap = 5
  auto r = f.manager.job_regist(spec(3, 10), "10.0.0.1", 50051, 0);
  CHECK_FALSE(r.ack);
  CHECK(r.job_id.empty());
  CHECK(f.store.size() == 0);
}

TEST_CASE("duplicate registration from the same endpoint gets a fresh job") {
  Fixture f;
  f.fill_window(1000);
  auto a = f.manager.job_regist(spec(3, 5), "10.0.0.1", 50051, 0);
  auto b = f.manager.job_regist(spec(3, 5), "10.0.0.1", 50051, 5);
  CHECK(a.ack);
  CHECK(b.ack);
  CHECK(a.job_id != b.job_id);
  CHECK(f.store.size() == 2);
}

TEST_CASE("request / end_request / finish lifecycle") {
  Fixture f;
  f.fill_window(1000);
  auto id = f.manager.job_regist(spec(2, 5), "ip", 1, 0).job_id;

  CHECK(f.manager.job_request(id, 5, 100));
  auto rec = *f.store.get(id);
  CHECK(rec.state == JobState::kRequesting);
  CHECK(rec.round == 1);
  CHECK(rec.demand == 5);
  CHECK(rec.amount == 0);
  CHECK(rec.start_sched == 100);

  // no nested rounds
  CHECK_FALSE(f.manager.job_request(id, 5, 150));

  // partial allocation then early close
  f.store.increment_amount(id);
  f.store.increment_amount(id);
  f.store.increment_amount(id);
  CHECK(f.manager.job_end_request(id, 400));
  rec = *f.store.get(id);
  CHECK(rec.state == JobState::kExecuting);
  CHECK(rec.amount == 3);
  CHECK(rec.attained_service == 3);
  CHECK(rec.total_sched == 300);  // 400 - 100
  CHECK_FALSE(f.store.increment_amount(id).has_value());  // allocations stopped

  // second (last) round
  CHECK(f.manager.job_request(id, 2, 500));
  rec = *f.store.get(id);
  CHECK(rec.round == 2);
  CHECK(rec.amount == 0);
  // exhausted rounds
  CHECK(f.manager.job_end_request(id, 600));
  CHECK_FALSE(f.manager.job_request(id, 2, 700));

  CHECK(f.manager.job_finish(id, 800));
  CHECK(f.store.get(id)->state == JobState::kFinished);
  CHECK_FALSE(f.manager.job_finish(id, 900));  // double finish
  CHECK_FALSE(f.manager.job_end_request(id, 950));
}

TEST_CASE("demand met auto-closes the round and notifies the framework") {
  struct Listener : JobEventListener {
    int calls = 0;
    std::string last;
    void on_demand_met(const std::string& job_id, TimeMs) override {
      ++calls;
      last = job_id;
    }
  } listener;
  Fixture f;
  f.fill_window(1000);
  f.manager.set_listener(&listener);
  auto id = f.manager.job_regist(spec(1, 2), "ip", 1, 0).job_id;
  f.manager.job_request(id, 2, 10);
  f.store.increment_amount(id);
  auto second = f.store.increment_amount(id);
  REQUIRE(second == 2);
  f.manager.handle_demand_met(id, 60);
  CHECK(listener.calls == 1);
  CHECK(listener.last == id);
  auto rec = *f.store.get(id);
  CHECK(rec.state == JobState::kExecuting);
  CHECK(rec.total_sched == 50);
  CHECK(rec.attained_service == 2);
  // a second demand-met signal is a no-op
  f.manager.handle_demand_met(id, 70);
  CHECK(listener.calls == 1);
}

TEST_CASE("unknown ids nack everywhere") {
  Fixture f;
  CHECK_FALSE(f.manager.job_request("nope", 3, 0));
  CHECK_FALSE(f.manager.job_end_request("nope", 0));
  CHECK_FALSE(f.manager.job_finish("nope", 0));
}

TEST_CASE("state machine: only legal transitions appear under random op sequences") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Fixture f;
    f.fill_window(1000);
    auto id = f.manager.job_regist(spec(3, 2), "ip", 1, 0).job_id;
    REQUIRE_FALSE(id.empty());
    JobState prev = f.store.get(id)->state;
    TimeMs t = 0;
    for (int step = 0; step < 30; ++step) {
      t += 10;
      switch (rng.uniform_int(4)) {
        case 0: f.manager.job_request(id, 1 + (int)rng.uniform_int(3), t); break;
        case 1: f.store.increment_amount(id); break;
        case 2: f.manager.job_end_request(id, t); break;
        case 3:
          if (rng.uniform() < 0.05) f.manager.job_finish(id, t);
          break;
      }
      JobState next = f.store.get(id)->state;
      bool legal =
          next == prev ||
          (prev == JobState::kRegistered && next == JobState::kRequesting) ||
          (prev == JobState::kRequesting && next == JobState::kExecuting) ||
          (prev == JobState::kExecuting && next == JobState::kRequesting) ||
          next == JobState::kFinished;
      CHECK(legal);
      auto rec = *f.store.get(id);
      CHECK(rec.amount <= std::max(rec.demand, 0));
      CHECK(rec.round <= rec.total_round);
      prev = next;
    }
  }
}
