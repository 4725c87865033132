#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fedsched/sim/config.hpp"
#include "fedsched/util/toml.hpp"

using fedsched::toml::parse;
using nlohmann::json;

TEST_CASE("scalars, tables, arrays") {
  auto j = parse(R"(
# experiment
seed = 42
name = "baseline"
ratio = 0.25
flag = true

[scheduler]
policy = "random"
tick_s = 10

[scheduler.params]
alpha = 1.5

counts = [1, 2, 3]
)");
  CHECK(j["seed"] == 42);
  CHECK(j["name"] == "baseline");
  CHECK(j["ratio"] == 0.25);
  CHECK(j["flag"] == true);
  CHECK(j["scheduler"]["policy"] == "random");
  CHECK(j["scheduler"]["tick_s"] == 10);
  CHECK(j["scheduler"]["params"]["alpha"] == 1.5);
  CHECK(j["scheduler"]["params"]["counts"] == json({1, 2, 3}));
}

TEST_CASE("array of tables and inline tables") {
  auto j = parse(R"(
[[jobs]]
demand = 10
public_constraint = { cpu_f = 4, ram = 4096 }

[[jobs]]
demand = 20
public_constraint = {}

[jobs.private_constraint]
dataset_size = 100
)");
  REQUIRE(j["jobs"].is_array());
  REQUIRE(j["jobs"].size() == 2);
  CHECK(j["jobs"][0]["demand"] == 10);
  CHECK(j["jobs"][0]["public_constraint"]["cpu_f"] == 4);
  CHECK(j["jobs"][1]["public_constraint"].empty());
  // dotted header after [[jobs]] attaches to the latest element
  CHECK(j["jobs"][1]["private_constraint"]["dataset_size"] == 100);
}

TEST_CASE("negative and float forms") {
  auto j = parse("a = -3\nb = 1e3\nc = -0.5\nparents = [-1, 0, 0]\n");
  CHECK(j["a"] == -3);
  CHECK(j["b"] == 1000.0);
  CHECK(j["c"] == -0.5);
  CHECK(j["parents"] == json({-1, 0, 0}));
}

TEST_CASE("experiment config survives a json round trip") {
  // to_json emits the _ms spellings that from_json reads back
  fedsched::ExperimentConfig cfg;
  cfg.seed = 7;
  cfg.mode = fedsched::SimMode::kPureRandom;
  cfg.latency = 75;
  cfg.round_deadline = 45'000;
  cfg.shards = 2;
  cfg.jobs = fedsched::default_job_mix();
  auto rt = fedsched::ExperimentConfig::from_json(cfg.to_json());
  CHECK(rt.to_json() == cfg.to_json());
}

TEST_CASE("errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse("a ="), doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_AS(parse("[unclosed\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("a = [1, 2\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("a = nonsense\n"), std::runtime_error);
}
