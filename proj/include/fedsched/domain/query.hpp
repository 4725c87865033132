#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedsched/domain/attributes.hpp"

namespace fedsched {

enum class Cmp { kGe, kGt, kEq, kLe, kLt };

std::string_view to_string(Cmp c);

struct QueryClause {
  std::string attr;
  Cmp cmp;
  double value;

  bool operator==(const QueryClause&) const = default;
};

// Conjunction of `name OP number` clauses joined by AND. Whitespace is
// insignificant; an empty query is true for every map. A clause naming an
// absent attribute evaluates false, so evaluation is total.
class Query {
 public:
  Query() = default;
  explicit Query(std::vector<QueryClause> clauses) : clauses_(std::move(clauses)) {}

  // Returns nullopt on malformed text; *error carries the reason when given.
  static std::optional<Query> parse(std::string_view text, std::string* error = nullptr);

  // Lower-bound constraint as an equivalent query (name>=bound per entry).
  static Query from_lower_bounds(const Constraint& c);

  bool eval(const AttributeMap& attrs) const;
  // Generic form used for querying job-record fields.
  bool eval(const std::function<std::optional<double>(std::string_view)>& lookup) const;

  const std::vector<QueryClause>& clauses() const { return clauses_; }
  bool empty() const { return clauses_.empty(); }
  std::string str() const;

  bool operator==(const Query&) const = default;

 private:
  std::vector<QueryClause> clauses_;
};

}  // namespace fedsched
