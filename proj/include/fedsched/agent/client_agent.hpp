#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fedsched/agent/binding_plugin.hpp"
#include "fedsched/domain/client.hpp"

namespace fedsched {

// Event-driven client session: check in while available, let the binding
// plugin pick among offers, accept, execute, repeat. The driver (simulator or
// test) owns time and transport; the agent only decides what to do next.
struct AgentConfig {
  TimeMs backoff = 15'000;  // wait after a fruitless check-in
};

class ClientAgent {
 public:
  enum class Phase { kIdle, kAwaitOffers, kAwaitBind, kBusy, kDeparted };

  // What the driver should do next.
  struct SendCheckin {};
  struct SendAccept {
    TaskOffer offer;
  };
  struct StartTask {
    TaskOffer offer;
  };
  struct Backoff {
    TimeMs delay;
  };
  struct Stop {};
  using Action = std::variant<SendCheckin, SendAccept, StartTask, Backoff, Stop>;

  struct LogEntry {
    TimeMs t;
    std::string what;  // checkin | offers | accept | bound | rejected | no_offer | done | depart
    std::string job_id;
  };

  ClientAgent(ClientInfo info, BindingPlugin* plugin, AgentConfig cfg = AgentConfig{});

  Action on_available(TimeMs now);
  Action on_offers(TimeMs now, std::vector<TaskOffer> offers);
  Action on_bind_result(TimeMs now, BindStatus status, const std::string& job_id);
  Action on_task_finished(TimeMs now);
  void on_depart(TimeMs now);

  Phase phase() const { return phase_; }
  const ClientInfo& info() const { return info_; }
  const TaskOffer* active_offer() const { return active_offer_ ? &*active_offer_ : nullptr; }
  const std::vector<LogEntry>& session_log() const { return log_; }

 private:
  Action try_next_offer(TimeMs now);

  ClientInfo info_;
  BindingPlugin* plugin_;
  AgentConfig cfg_;
  Phase phase_ = Phase::kIdle;
  std::vector<TaskOffer> pending_offers_;
  std::optional<TaskOffer> active_offer_;
  std::vector<LogEntry> log_;
};

}  // namespace fedsched
