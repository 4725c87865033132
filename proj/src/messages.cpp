#include "fedsched/domain/messages.hpp"

namespace fedsched::msg {

json JobRegist::to_json() const {
  return json{{"total_round", total_round},
              {"est_demand", est_demand},
              {"public_constraint", public_constraint.to_json()},
              {"private_constraint", private_constraint.to_json()},
              {"job_ip", job_ip},
              {"port", port}};
}

JobRegist JobRegist::from_json(const json& j) {
  JobRegist m;
  m.total_round = j.at("total_round").get<int>();
  m.est_demand = j.at("est_demand").get<int>();
  m.public_constraint = Constraint::from_json(j.at("public_constraint"));
  m.private_constraint = Constraint::from_json(j.at("private_constraint"));
  m.job_ip = j.at("job_ip").get<std::string>();
  m.port = j.at("port").get<int>();
  return m;
}

json JobRegistReply::to_json() const {
  json j{{"ack", ack}};
  if (ack) j["job_id"] = job_id;
  return j;
}

JobRegistReply JobRegistReply::from_json(const json& j) {
  JobRegistReply m;
  m.ack = j.at("ack").get<bool>();
  if (m.ack) m.job_id = j.at("job_id").get<std::string>();
  return m;
}

json JobRequest::to_json() const { return json{{"job_id", job_id}, {"demand", demand}}; }

JobRequest JobRequest::from_json(const json& j) {
  return JobRequest{j.at("job_id").get<std::string>(), j.at("demand").get<int>()};
}

json JobEndRequest::to_json() const { return json{{"job_id", job_id}}; }

JobEndRequest JobEndRequest::from_json(const json& j) {
  return JobEndRequest{j.at("job_id").get<std::string>()};
}

json JobFinish::to_json() const { return json{{"job_id", job_id}}; }

JobFinish JobFinish::from_json(const json& j) {
  return JobFinish{j.at("job_id").get<std::string>()};
}

json AckReply::to_json() const { return json{{"ack", ack}}; }

AckReply AckReply::from_json(const json& j) { return AckReply{j.at("ack").get<bool>()}; }

json ClientCheckin::to_json() const {
  return json{{"client_id", client_id}, {"public_attrs", public_attrs.to_json()}};
}

ClientCheckin ClientCheckin::from_json(const json& j) {
  ClientCheckin m;
  m.client_id = j.at("client_id").get<std::string>();
  m.public_attrs = AttributeMap::from_json(j.at("public_attrs"));
  return m;
}

json ClientCheckinReply::to_json() const {
  json arr = json::array();
  for (const auto& o : offers) {
    arr.push_back(json{{"job_id", o.job_id},
                       {"job_ip", o.job_ip},
                       {"port", o.port},
                       {"round", o.round},
                       {"private_constraint", o.private_constraint.to_json()}});
  }
  return json{{"offers", arr}};
}

ClientCheckinReply ClientCheckinReply::from_json(const json& j) {
  ClientCheckinReply m;
  for (const auto& e : j.at("offers")) {
    TaskOffer o;
    o.job_id = e.at("job_id").get<std::string>();
    o.job_ip = e.at("job_ip").get<std::string>();
    o.port = e.at("port").get<int>();
    o.round = e.at("round").get<int>();
    o.private_constraint = Constraint::from_json(e.at("private_constraint"));
    m.offers.push_back(std::move(o));
  }
  return m;
}

json ClientAccept::to_json() const {
  return json{{"client_id", client_id}, {"job_id", job_id}};
}

ClientAccept ClientAccept::from_json(const json& j) {
  return ClientAccept{j.at("client_id").get<std::string>(), j.at("job_id").get<std::string>()};
}

json ClientAcceptReply::to_json() const {
  return json{{"status", status}, {"job_ip", job_ip}, {"port", port}};
}

ClientAcceptReply ClientAcceptReply::from_json(const json& j) {
  return ClientAcceptReply{j.at("status").get<std::string>(), j.at("job_ip").get<std::string>(),
                           j.at("port").get<int>()};
}

json ClientPing::to_json() const { return json{{"client_id", client_id}}; }

ClientPing ClientPing::from_json(const json& j) {
  return ClientPing{j.at("client_id").get<std::string>()};
}

json ClientPingReply::to_json() const { return json{{"task_status", task_status}}; }

ClientPingReply ClientPingReply::from_json(const json& j) {
  return ClientPingReply{j.at("task_status").get<std::string>()};
}

json FetchPlan::to_json() const { return json{{"job_id", job_id}, {"round", round}}; }

FetchPlan FetchPlan::from_json(const json& j) {
  return FetchPlan{j.at("job_id").get<std::string>(), j.at("round").get<int>()};
}

json FetchPlanReply::to_json() const {
  if (payload) return json{{"payload", *payload}};
  return json{{"status", status}};
}

FetchPlanReply FetchPlanReply::from_json(const json& j) {
  FetchPlanReply m;
  if (j.contains("payload")) {
    m.payload = j.at("payload").get<std::vector<std::uint8_t>>();
  } else {
    m.status = j.at("status").get<std::string>();
  }
  return m;
}

json Upload::to_json() const {
  return json{{"job_id", job_id}, {"round", round}, {"vector", vector}, {"weight", weight}};
}

Upload Upload::from_json(const json& j) {
  Upload m;
  m.job_id = j.at("job_id").get<std::string>();
  m.round = j.at("round").get<int>();
  m.vector = j.at("vector").get<std::vector<double>>();
  m.weight = j.at("weight").get<double>();
  return m;
}

json FlushEntry::to_json() const {
  return json{{"job_id", job_id}, {"round", round}, {"state", state}};
}

FlushEntry FlushEntry::from_json(const json& j) {
  return FlushEntry{j.at("job_id").get<std::string>(), j.at("round").get<int>(), j.at("state")};
}

json Flush::to_json() const {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back(e.to_json());
  return json{{"entries", arr}};
}

Flush Flush::from_json(const json& j) {
  Flush m;
  for (const auto& e : j.at("entries")) m.entries.push_back(FlushEntry::from_json(e));
  return m;
}

json PublishPlan::to_json() const {
  return json{{"job_id", job_id}, {"round", round}, {"payload", payload}};
}

PublishPlan PublishPlan::from_json(const json& j) {
  PublishPlan m;
  m.job_id = j.at("job_id").get<std::string>();
  m.round = j.at("round").get<int>();
  m.payload = j.at("payload").get<std::vector<std::uint8_t>>();
  return m;
}

json GetResult::to_json() const { return json{{"job_id", job_id}, {"round", round}}; }

GetResult GetResult::from_json(const json& j) {
  return GetResult{j.at("job_id").get<std::string>(), j.at("round").get<int>()};
}

json GetResultReply::to_json() const { return json{{"vector", vector}, {"count", count}}; }

GetResultReply GetResultReply::from_json(const json& j) {
  GetResultReply m;
  m.vector = j.at("vector").get<std::vector<double>>();
  m.count = j.at("count").get<long long>();
  return m;
}

}  // namespace fedsched::msg
