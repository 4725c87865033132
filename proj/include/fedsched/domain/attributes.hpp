#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

namespace fedsched {

// Named numeric client/job attributes. Keys are non-empty, values finite;
// ordered storage makes equality and serialization independent of insertion
// order.
class AttributeMap {
 public:
  AttributeMap() = default;
  AttributeMap(std::initializer_list<std::pair<const std::string, double>> kv);

  // Throws std::invalid_argument on empty name or non-finite value.
  void set(std::string name, double value);
  std::optional<double> get(std::string_view name) const;
  bool contains(std::string_view name) const { return get(name).has_value(); }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, double>& entries() const { return entries_; }

  bool operator==(const AttributeMap& other) const = default;

  nlohmann::json to_json() const;
  static AttributeMap from_json(const nlohmann::json& j);

 private:
  std::map<std::string, double> entries_;
};

// Conjunctive lower bounds over named attributes. Empty constraint is
// satisfied by everything; a missing attribute fails its bound.
class Constraint {
 public:
  Constraint() = default;
  Constraint(std::initializer_list<std::pair<const std::string, double>> kv);

  void set_bound(std::string name, double bound);
  const std::map<std::string, double>& bounds() const { return bounds_; }
  bool empty() const { return bounds_.empty(); }

  bool operator==(const Constraint& other) const = default;
  bool operator<(const Constraint& other) const { return bounds_ < other.bounds_; }

  // Canonical signature string, used to bucket jobs with identical bounds.
  std::string signature() const;

  nlohmann::json to_json() const;  // {name: bound}
  static Constraint from_json(const nlohmann::json& j);

 private:
  std::map<std::string, double> bounds_;
};

bool satisfies(const AttributeMap& attrs, const Constraint& c);

}  // namespace fedsched
