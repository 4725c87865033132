#include "fedsched/domain/attributes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fedsched {

AttributeMap::AttributeMap(std::initializer_list<std::pair<const std::string, double>> kv) {
  for (const auto& [name, value] : kv) set(name, value);
}

void AttributeMap::set(std::string name, double value) {
  if (name.empty()) throw std::invalid_argument("attribute name must be non-empty");
  if (!std::isfinite(value)) throw std::invalid_argument("attribute value must be finite: " + name);
  entries_[std::move(name)] = value;
}

std::optional<double> AttributeMap::get(std::string_view name) const {
  auto it = entries_.find(std::string(name));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json AttributeMap::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : entries_) j[name] = value;
  return j;
}

AttributeMap AttributeMap::from_json(const nlohmann::json& j) {
  AttributeMap m;
  for (auto it = j.begin(); it != j.end(); ++it) m.set(it.key(), it.value().get<double>());
  return m;
}

Constraint::Constraint(std::initializer_list<std::pair<const std::string, double>> kv) {
  for (const auto& [name, bound] : kv) set_bound(name, bound);
}

void Constraint::set_bound(std::string name, double bound) {
  if (name.empty()) throw std::invalid_argument("constraint name must be non-empty");
  if (!std::isfinite(bound)) throw std::invalid_argument("constraint bound must be finite: " + name);
  bounds_[std::move(name)] = bound;
}

std::string Constraint::signature() const {
  std::ostringstream out;
  for (const auto& [name, bound] : bounds_) out << name << ">=" << bound << ";";
  return out.str();
}

nlohmann::json Constraint::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, bound] : bounds_) j[name] = bound;
  return j;
}

Constraint Constraint::from_json(const nlohmann::json& j) {
  Constraint c;
  for (auto it = j.begin(); it != j.end(); ++it) c.set_bound(it.key(), it.value().get<double>());
  return c;
}

bool satisfies(const AttributeMap& attrs, const Constraint& c) {
  for (const auto& [name, bound] : c.bounds()) {
    auto value = attrs.get(name);
    if (!value || *value < bound) return false;
  }
  return true;
}

}  // namespace fedsched
