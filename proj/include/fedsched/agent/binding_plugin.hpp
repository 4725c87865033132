#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fedsched/control/client_manager.hpp"

namespace fedsched {

// Client-side decision logic: given the offered tasks (in manager priority
// order) and the client's private attributes, pick a job or decline all.
// The returned id must be one of the offered ids.
class BindingPlugin {
 public:
  virtual ~BindingPlugin() = default;
  virtual std::string name() const = 0;
  virtual std::optional<std::string> choose(const std::vector<TaskOffer>& offers,
                                            const AttributeMap& private_attrs) = 0;
};

// Default: first offer whose private constraint the client satisfies.
class FirstFitPlugin : public BindingPlugin {
 public:
  std::string name() const override { return "default"; }
  std::optional<std::string> choose(const std::vector<TaskOffer>& offers,
                                    const AttributeMap& private_attrs) override;
};

// Among satisfying offers, prefer the job whose round number is smallest
// (helps young jobs ramp up).
class PreferSmallestRoundPlugin : public BindingPlugin {
 public:
  std::string name() const override { return "prefer_smallest_round"; }
  std::optional<std::string> choose(const std::vector<TaskOffer>& offers,
                                    const AttributeMap& private_attrs) override;
};

std::unique_ptr<BindingPlugin> make_binding_plugin(const std::string& name);

}  // namespace fedsched
