#include "fedsched/agent/client_agent.hpp"

#include <algorithm>

namespace fedsched {

ClientAgent::ClientAgent(ClientInfo info, BindingPlugin* plugin, AgentConfig cfg)
    : info_(std::move(info)), plugin_(plugin), cfg_(cfg) {}

ClientAgent::Action ClientAgent::on_available(TimeMs now) {
  if (phase_ == Phase::kDeparted) return Stop{};
  phase_ = Phase::kAwaitOffers;
  log_.push_back({now, "checkin", ""});
  return SendCheckin{};
}

ClientAgent::Action ClientAgent::try_next_offer(TimeMs now) {
  while (!pending_offers_.empty()) {
    auto choice = plugin_->choose(pending_offers_, info_.private_attrs);
    if (!choice) break;
    auto it = std::find_if(pending_offers_.begin(), pending_offers_.end(),
                           [&](const TaskOffer& o) { return o.job_id == *choice; });
    if (it == pending_offers_.end()) break;  // plugin returned a job we were not offered
    TaskOffer offer = *it;
    pending_offers_.erase(it);
    active_offer_ = offer;
    phase_ = Phase::kAwaitBind;
    log_.push_back({now, "accept", offer.job_id});
    return SendAccept{std::move(offer)};
  }
  pending_offers_.clear();
  active_offer_.reset();
  phase_ = Phase::kIdle;
  log_.push_back({now, "no_offer", ""});
  return Backoff{cfg_.backoff};
}

ClientAgent::Action ClientAgent::on_offers(TimeMs now, std::vector<TaskOffer> offers) {
  if (phase_ == Phase::kDeparted) return Stop{};
  log_.push_back({now, "offers", ""});
  pending_offers_ = std::move(offers);
  return try_next_offer(now);
}

ClientAgent::Action ClientAgent::on_bind_result(TimeMs now, BindStatus status,
                                                const std::string& job_id) {
  if (phase_ == Phase::kDeparted) return Stop{};
  if (status == BindStatus::kBound && active_offer_) {
    phase_ = Phase::kBusy;
    log_.push_back({now, "bound", job_id});
    return StartTask{*active_offer_};
  }
  log_.push_back({now, "rejected", job_id});
  active_offer_.reset();
  return try_next_offer(now);
}

ClientAgent::Action ClientAgent::on_task_finished(TimeMs now) {
  if (phase_ == Phase::kDeparted) return Stop{};
  log_.push_back({now, "done", active_offer_ ? active_offer_->job_id : ""});
  active_offer_.reset();
  // Completed clients go straight back to the pool.
  phase_ = Phase::kAwaitOffers;
  log_.push_back({now, "checkin", ""});
  return SendCheckin{};
}

void ClientAgent::on_depart(TimeMs now) {
  log_.push_back({now, "depart", active_offer_ ? active_offer_->job_id : ""});
  phase_ = Phase::kDeparted;
}

}  // namespace fedsched
