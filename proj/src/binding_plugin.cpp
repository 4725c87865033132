#include "fedsched/agent/binding_plugin.hpp"

#include <stdexcept>

namespace fedsched {

std::optional<std::string> FirstFitPlugin::choose(const std::vector<TaskOffer>& offers,
                                                  const AttributeMap& private_attrs) {
  for (const auto& offer : offers)
    if (satisfies(private_attrs, offer.private_constraint)) return offer.job_id;
  return std::nullopt;
}

std::optional<std::string> PreferSmallestRoundPlugin::choose(const std::vector<TaskOffer>& offers,
                                                             const AttributeMap& private_attrs) {
  const TaskOffer* best = nullptr;
  for (const auto& offer : offers) {
    if (!satisfies(private_attrs, offer.private_constraint)) continue;
    if (!best || offer.round < best->round) best = &offer;
  }
  if (!best) return std::nullopt;
  return best->job_id;
}

std::unique_ptr<BindingPlugin> make_binding_plugin(const std::string& name) {
  if (name == "default") return std::make_unique<FirstFitPlugin>();
  if (name == "prefer_smallest_round") return std::make_unique<PreferSmallestRoundPlugin>();
  throw std::invalid_argument("unknown binding plugin: " + name);
}

}  // namespace fedsched
