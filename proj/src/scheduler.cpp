#include "fedsched/control/scheduler.hpp"

namespace fedsched {

void Scheduler::on_job_register(const std::string& job_id, TimeMs now) {
  std::lock_guard lock(mu_);
  api_.set_now(now);
  plugin_->on_job_register(api_, job_id);
}

void Scheduler::on_job_request(const std::string& job_id, TimeMs now) {
  std::lock_guard lock(mu_);
  api_.set_now(now);
  plugin_->on_job_request(api_, job_id);
  if (plugin_->mode() == SchedMode::kSmallBatch) repartition(now);
}

void Scheduler::on_tick(TimeMs now) {
  std::lock_guard lock(mu_);
  api_.set_now(now);
  plugin_->on_tick(api_, now);
  if (plugin_->mode() == SchedMode::kSmallBatch) repartition(now);
}

void Scheduler::on_job_finished(const std::string& job_id, TimeMs now) {
  (void)job_id;
  if (plugin_->mode() == SchedMode::kSmallBatch) {
    std::lock_guard lock(mu_);
    api_.set_now(now);
    repartition(now);
  }
}

void Scheduler::repartition(TimeMs now) {
  (void)now;
  auto requesting = jobs_.requesting_ids();
  auto start = std::chrono::steady_clock::now();
  auto groups = plugin_->partition(api_, requesting);
  last_partition_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  partition_ = std::make_shared<const Partition>(std::move(groups));
}

std::shared_ptr<const Scheduler::Partition> Scheduler::current_partition() const {
  std::lock_guard lock(mu_);
  return partition_;
}

}  // namespace fedsched
