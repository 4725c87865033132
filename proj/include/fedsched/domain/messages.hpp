#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedsched/control/client_manager.hpp"
#include "fedsched/dataplane/reducer.hpp"
#include "fedsched/domain/attributes.hpp"

// Transport-agnostic message schemas with the reference JSON encoding.
// The in-process transport passes structs; this encoding is what a remote
// transport would put on the wire and what the schema tests pin down.
namespace fedsched::msg {

using nlohmann::json;

// --- job manager endpoints ---

struct JobRegist {
  int total_round = 1;
  int est_demand = 1;
  Constraint public_constraint;
  Constraint private_constraint;
  std::string job_ip;
  int port = 0;

  json to_json() const;
  static JobRegist from_json(const json& j);
};

struct JobRegistReply {
  bool ack = false;
  std::string job_id;  // present iff ack

  json to_json() const;
  static JobRegistReply from_json(const json& j);
};

struct JobRequest {
  std::string job_id;
  int demand = 0;

  json to_json() const;
  static JobRequest from_json(const json& j);
};

struct JobEndRequest {
  std::string job_id;

  json to_json() const;
  static JobEndRequest from_json(const json& j);
};

struct JobFinish {
  std::string job_id;

  json to_json() const;
  static JobFinish from_json(const json& j);
};

struct AckReply {
  bool ack = false;

  json to_json() const;
  static AckReply from_json(const json& j);
};

// --- client manager endpoints ---

struct ClientCheckin {
  std::string client_id;
  AttributeMap public_attrs;  // private attributes never travel

  json to_json() const;
  static ClientCheckin from_json(const json& j);
};

struct ClientCheckinReply {
  std::vector<TaskOffer> offers;

  // Offers carry exactly job_id, job_ip, port, round, private_constraint.
  json to_json() const;
  static ClientCheckinReply from_json(const json& j);
};

struct ClientAccept {
  std::string client_id;
  std::string job_id;

  json to_json() const;
  static ClientAccept from_json(const json& j);
};

struct ClientAcceptReply {
  std::string status;  // BOUND | REJECTED
  std::string job_ip;
  int port = 0;

  json to_json() const;
  static ClientAcceptReply from_json(const json& j);
};

struct ClientPing {
  std::string client_id;

  json to_json() const;
  static ClientPing from_json(const json& j);
};

struct ClientPingReply {
  std::string task_status;

  json to_json() const;
  static ClientPingReply from_json(const json& j);
};

// --- data plane messages ---

struct FetchPlan {
  std::string job_id;
  int round = 0;

  json to_json() const;
  static FetchPlan from_json(const json& j);
};

struct FetchPlanReply {
  std::optional<std::vector<std::uint8_t>> payload;  // absent -> status field
  std::string status;                                // NOT_READY | STALE_ROUND

  json to_json() const;
  static FetchPlanReply from_json(const json& j);
};

struct Upload {
  std::string job_id;
  int round = 0;
  std::vector<double> vector;
  double weight = 1.0;

  json to_json() const;
  static Upload from_json(const json& j);
};

struct FlushEntry {
  std::string job_id;
  int round = 0;
  json state;  // reducer-specific partial aggregate

  json to_json() const;
  static FlushEntry from_json(const json& j);
};

struct Flush {
  std::vector<FlushEntry> entries;

  json to_json() const;
  static Flush from_json(const json& j);
};

struct PublishPlan {
  std::string job_id;
  int round = 0;
  std::vector<std::uint8_t> payload;

  json to_json() const;
  static PublishPlan from_json(const json& j);
};

struct GetResult {
  std::string job_id;
  int round = 0;

  json to_json() const;
  static GetResult from_json(const json& j);
};

struct GetResultReply {
  std::vector<double> vector;
  long long count = 0;

  json to_json() const;
  static GetResultReply from_json(const json& j);
};

}  // namespace fedsched::msg
