#include "fedsched/control/client_manager.hpp"

#include "fedsched/util/rng.hpp"

namespace fedsched {

std::size_t ShardRouter::route(const std::string& client_id) const {
  // fnv1a plus a mix round keeps short sequential ids uniform
  return splitmix64(fnv1a64(client_id)) % shards_;
}

ClientManager::ClientManager(int shard_index, JobStore& jobs, JobManager& job_manager,
                             Scheduler* scheduler, BindingLedger& ledger,
                             ClientWindowStore& window, ClientCache& cache,
                             ClientManagerConfig cfg)
    : shard_index_(shard_index),
      jobs_(jobs),
      job_manager_(job_manager),
      scheduler_(scheduler),
      ledger_(ledger),
      cfg_(cfg),
      window_(window),
      cache_(cache) {}

TaskOffer ClientManager::offer_from(const JobRecord& rec) {
  return TaskOffer{rec.job_id,           rec.job_ip, rec.port, rec.round,
                   rec.private_constraint, rec.workload_per_client};
}

std::vector<TaskOffer> ClientManager::online_offers(const ClientInfo& info, TimeMs now) {
  (void)now;
  std::vector<TaskOffer> offers;
  for (const auto& rec : jobs_.requesting_jobs()) {  // already in priority order
    if (offers.size() >= cfg_.offers_per_checkin) break;
    if (rec.amount >= rec.demand) continue;
    if (!satisfies(info.public_attrs, rec.public_constraint)) continue;
    if (ledger_.has_bound(rec.job_id, rec.round, info.client_id)) continue;
    offers.push_back(offer_from(rec));
  }
  return offers;
}

void ClientManager::remember_offer(const std::string& client_id, const TaskOffer& offer,
                                   TimeMs now) {
  std::lock_guard lock(mu_);
  outstanding_[client_id].push_back(Outstanding{offer, now});
}

CheckInResponse ClientManager::client_checkin(const ClientInfo& info, TimeMs now) {
  if (now < info.avail_start || now > info.avail_end) return {};  // simulation guard
  if (ledger_.client_active(info.client_id)) return {};           // one task at a time
  window_.insert(now, info);
  bool small_batch =
      scheduler_ && scheduler_->mode() == SchedMode::kSmallBatch && scheduler_->current_partition();
  if (small_batch) {
    // Defer: the client waits in the cache until a group's query selects it.
    cache_.push(now, info.client_id, info.public_attrs);
    CheckInResponse resp;
    resp.deferred = true;
    return resp;
  }
  CheckInResponse resp;
  resp.offers = online_offers(info, now);
  {
    std::lock_guard lock(mu_);
    outstanding_.erase(info.client_id);
  }
  for (const auto& offer : resp.offers) remember_offer(info.client_id, offer, now);
  return resp;
}

BindResult ClientManager::client_accept(const std::string& client_id, const std::string& job_id,
                                        TimeMs now) {
  TaskOffer offer;
  {
    std::lock_guard lock(mu_);
    auto it = outstanding_.find(client_id);
    if (it == outstanding_.end()) return {};
    const Outstanding* match = nullptr;
    for (const auto& o : it->second) {
      if (o.offer.job_id == job_id) {
        match = &o;
        break;
      }
    }
    if (!match) return {};
    if (now - match->offered_at > cfg_.offer_validity) {
      outstanding_.erase(it);
      return {};  // stale offer
    }
    offer = match->offer;
  }
  if (ledger_.client_active(client_id)) return {};
  if (ledger_.has_bound(offer.job_id, offer.round, client_id)) return {};
  auto new_amount = jobs_.increment_amount(job_id);
  if (!new_amount) {
    // Saturated or round closed between offer and accept.
    return {};
  }
  ledger_.record_bound(now, client_id, job_id, offer.round);
  {
    std::lock_guard lock(mu_);
    outstanding_.erase(client_id);
  }
  auto rec = jobs_.get(job_id);
  BindResult result{BindStatus::kBound, rec ? rec->job_ip : "", rec ? rec->port : 0};
  if (rec && *new_amount >= rec->demand) job_manager_.handle_demand_met(job_id, now);
  return result;
}

std::string ClientManager::task_status(const std::string& client_id) const {
  return ledger_.client_active(client_id) ? "active" : "none";
}

ClientManager::ServeOutcome ClientManager::serve_partition(TimeMs now) {
  ServeOutcome out;
  if (!scheduler_) return out;
  auto partition = scheduler_->current_partition();
  if (!partition) return out;
  for (const auto& group : *partition) {
    struct Slot {
      JobRecord rec;
      int budget;  // offers left to hand out for this member
    };
    std::vector<Slot> slots;
    int total_budget = 0;
    for (const auto& job_id : group.members) {
      auto rec = jobs_.get(job_id);
      if (!rec || rec->state != JobState::kRequesting) continue;
      int remaining = rec->demand - rec->amount;
      if (remaining <= 0) continue;
      int budget = remaining * std::max(1, cfg_.offer_overshoot);
      slots.push_back(Slot{*rec, budget});
      total_budget += budget;
    }
    if (slots.empty()) continue;
    auto clients = cache_.take_matching(now, group.client_query, total_budget);
    std::size_t cursor = 0;
    for (const auto& client : clients) {
      if (ledger_.client_active(client.client_id)) continue;
      // Round-robin over members in priority order.
      bool placed = false;
      for (std::size_t step = 0; step < slots.size() && !placed; ++step) {
        Slot& slot = slots[(cursor + step) % slots.size()];
        if (slot.budget <= 0) continue;
        if (!satisfies(client.public_attrs, slot.rec.public_constraint)) continue;
        if (ledger_.has_bound(slot.rec.job_id, slot.rec.round, client.client_id)) continue;
        {
          std::lock_guard lock(mu_);
          if (!served_
                   .try_emplace({client.client_id, slot.rec.job_id, slot.rec.round}, now)
                   .second)
            continue;  // this client already let an offer for this round lapse
        }
        TaskOffer offer = offer_from(slot.rec);
        remember_offer(client.client_id, offer, now);
        out.deliveries.emplace_back(client.client_id, std::move(offer));
        slot.budget -= 1;
        cursor = (cursor + step + 1) % slots.size();
        placed = true;
      }
      if (!placed) out.no_task.push_back(client.client_id);
    }
  }
  return out;
}

std::vector<std::string> ClientManager::expire_cache(TimeMs now) { return cache_.expire(now); }

}  // namespace fedsched
