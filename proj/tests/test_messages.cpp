#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fedsched/domain/messages.hpp"

using namespace fedsched;
using nlohmann::json;

// Golden schema tests: field names are part of the wire contract and must
// match exactly.

TEST_CASE("JOB_REGIST request and reply") {
  msg::JobRegist m;
  m.total_round = 8;
  m.est_demand = 40;
  m.public_constraint = Constraint{{"cpu_f", 4.0}};
  m.private_constraint = Constraint{{"dataset_size", 100.0}};
  m.job_ip = "10.0.0.7";
  m.port = 50051;
  CHECK(m.to_json() == json::parse(R"({
    "total_round": 8, "est_demand": 40,
    "public_constraint": {"cpu_f": 4.0},
    "private_constraint": {"dataset_size": 100.0},
    "job_ip": "10.0.0.7", "port": 50051})"));
  auto rt = msg::JobRegist::from_json(m.to_json());
  CHECK(rt.to_json() == m.to_json());

  CHECK(msg::JobRegistReply{true, "j0001"}.to_json() ==
        json::parse(R"({"ack": true, "job_id": "j0001"})"));
  CHECK(msg::JobRegistReply{false, ""}.to_json() == json::parse(R"({"ack": false})"));
}

TEST_CASE("JOB_REQUEST / JOB_END_REQUEST / JOB_FINISH") {
  CHECK(msg::JobRequest{"j0001", 25}.to_json() ==
        json::parse(R"({"job_id": "j0001", "demand": 25})"));
  CHECK(msg::JobEndRequest{"j0001"}.to_json() == json::parse(R"({"job_id": "j0001"})"));
  CHECK(msg::JobFinish{"j0001"}.to_json() == json::parse(R"({"job_id": "j0001"})"));
  CHECK(msg::AckReply{true}.to_json() == json::parse(R"({"ack": true})"));
}

TEST_CASE("CLIENT_CHECKIN carries only public attributes") {
  msg::ClientCheckin m;
  m.client_id = "c000042";
  m.public_attrs = AttributeMap{{"cpu_f", 8.0}, {"ram", 4096.0}};
  json j = m.to_json();
  CHECK(j == json::parse(R"({
    "client_id": "c000042",
    "public_attrs": {"cpu_f": 8.0, "ram": 4096.0}})"));
  CHECK_FALSE(j.contains("private_attrs"));
  std::string dumped = j.dump();
  CHECK(dumped.find("private") == std::string::npos);
}

TEST_CASE("CLIENT_CHECKIN reply offers expose exactly the contract fields") {
  msg::ClientCheckinReply reply;
  TaskOffer offer;
  offer.job_id = "j0002";
  offer.job_ip = "10.0.0.9";
  offer.port = 50061;
  offer.round = 3;
  offer.private_constraint = Constraint{{"sample_quality", 0.5}};
  offer.workload_per_client = 900;  // not part of the wire format
  reply.offers.push_back(offer);
  json j = reply.to_json();
  CHECK(j == json::parse(R"({
    "offers": [{
      "job_id": "j0002", "job_ip": "10.0.0.9", "port": 50061, "round": 3,
      "private_constraint": {"sample_quality": 0.5}}]})"));
  CHECK(j["offers"][0].size() == 5);  // no stray fields
}

TEST_CASE("CLIENT_ACCEPT and CLIENT_PING") {
  CHECK(msg::ClientAccept{"c1", "j1"}.to_json() ==
        json::parse(R"({"client_id": "c1", "job_id": "j1"})"));
  CHECK(msg::ClientAcceptReply{"BOUND", "10.0.0.9", 50061}.to_json() ==
        json::parse(R"({"status": "BOUND", "job_ip": "10.0.0.9", "port": 50061})"));
  CHECK(msg::ClientPing{"c1"}.to_json() == json::parse(R"({"client_id": "c1"})"));
  CHECK(msg::ClientPingReply{"active"}.to_json() == json::parse(R"({"task_status": "active"})"));
}

TEST_CASE("data plane messages") {
  CHECK(msg::FetchPlan{"j1", 2}.to_json() == json::parse(R"({"job_id": "j1", "round": 2})"));

  msg::FetchPlanReply hit;
  hit.payload = std::vector<std::uint8_t>{1, 2, 3};
  CHECK(hit.to_json() == json::parse(R"({"payload": [1, 2, 3]})"));
  msg::FetchPlanReply miss;
  miss.status = "NOT_READY";
  CHECK(miss.to_json() == json::parse(R"({"status": "NOT_READY"})"));

  msg::Upload up;
  up.job_id = "j1";
  up.round = 2;
  up.vector = {0.5, -1.0};
  up.weight = 320;
  CHECK(up.to_json() ==
        json::parse(R"({"job_id": "j1", "round": 2, "vector": [0.5, -1.0], "weight": 320.0})"));

  msg::Flush flush;
  flush.entries.push_back(
      msg::FlushEntry{"j1", 2, json::parse(R"({"weighted_sum": [1.0], "total_weight": 2.0, "n": 2})")});
  CHECK(flush.to_json() == json::parse(R"({
    "entries": [{"job_id": "j1", "round": 2,
                 "state": {"weighted_sum": [1.0], "total_weight": 2.0, "n": 2}}]})"));

  msg::PublishPlan pub;
  pub.job_id = "j1";
  pub.round = 2;
  pub.payload = {7, 7};
  CHECK(pub.to_json() == json::parse(R"({"job_id": "j1", "round": 2, "payload": [7, 7]})"));

  CHECK(msg::GetResult{"j1", 2}.to_json() == json::parse(R"({"job_id": "j1", "round": 2})"));
  msg::GetResultReply res;
  res.vector = {0.25};
  res.count = 17;
  CHECK(res.to_json() == json::parse(R"({"vector": [0.25], "count": 17})"));
}

TEST_CASE("round trips preserve content") {
  msg::Upload up;
  up.job_id = "j9";
  up.round = 4;
  up.vector = {1.5, 2.5, -3.25};
  up.weight = 17.5;
  auto rt = msg::Upload::from_json(up.to_json());
  CHECK(rt.to_json() == up.to_json());

  msg::ClientCheckinReply reply;
  TaskOffer o;
  o.job_id = "j1";
  o.job_ip = "ip";
  o.port = 1;
  o.round = 1;
  reply.offers.push_back(o);
  auto rt2 = msg::ClientCheckinReply::from_json(reply.to_json());
  CHECK(rt2.to_json() == reply.to_json());
}
