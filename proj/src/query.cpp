#include "fedsched/domain/query.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fedsched {
namespace {

void set_error(std::string* error, std::string msg) {
  if (error) *error = std::move(msg);
}

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

bool lex_ident(Lexer& lx, std::string& out) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  while (lx.pos < lx.text.size()) {
    char c = lx.text[lx.pos];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      ++lx.pos;
    } else {
      break;
    }
  }
  if (lx.pos == start) return false;
  out = std::string(lx.text.substr(start, lx.pos - start));
  return true;
}

bool lex_cmp(Lexer& lx, Cmp& out) {
  lx.skip_ws();
  if (lx.pos >= lx.text.size()) return false;
  char c = lx.text[lx.pos];
  char next = lx.pos + 1 < lx.text.size() ? lx.text[lx.pos + 1] : '\0';
  if (c == '>' && next == '=') {
    out = Cmp::kGe;
    lx.pos += 2;
  } else if (c == '<' && next == '=') {
    out = Cmp::kLe;
    lx.pos += 2;
  } else if (c == '>') {
    out = Cmp::kGt;
    ++lx.pos;
  } else if (c == '<') {
    out = Cmp::kLt;
    ++lx.pos;
  } else if (c == '=') {
    out = Cmp::kEq;
    ++lx.pos;
  } else {
    return false;
  }
  return true;
}

bool lex_number(Lexer& lx, double& out) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  while (lx.pos < lx.text.size()) {
    char c = lx.text[lx.pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
        c == 'e' || c == 'E') {
      ++lx.pos;
    } else {
      break;
    }
  }
  if (lx.pos == start) return false;
  std::string tok(lx.text.substr(start, lx.pos - start));
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size() && std::isfinite(out);
}

bool compare(double lhs, Cmp cmp, double rhs) {
  switch (cmp) {
    case Cmp::kGe: return lhs >= rhs;
    case Cmp::kGt: return lhs > rhs;
    case Cmp::kEq: return lhs == rhs;
    case Cmp::kLe: return lhs <= rhs;
    case Cmp::kLt: return lhs < rhs;
  }
  return false;
}

}  // namespace

std::string_view to_string(Cmp c) {
  switch (c) {
    case Cmp::kGe: return ">=";
    case Cmp::kGt: return ">";
    case Cmp::kEq: return "=";
    case Cmp::kLe: return "<=";
    case Cmp::kLt: return "<";
  }
  return "?";
}

std::optional<Query> Query::parse(std::string_view text, std::string* error) {
  Lexer lx{text};
  std::vector<QueryClause> clauses;
  if (lx.done()) return Query{};  // empty query matches everything
  while (true) {
    QueryClause clause;
    if (!lex_ident(lx, clause.attr)) {
      set_error(error, "expected attribute name");
      return std::nullopt;
    }
    if (clause.attr == "AND") {
      set_error(error, "dangling AND");
      return std::nullopt;
    }
    if (!lex_cmp(lx, clause.cmp)) {
      set_error(error, "expected comparator after '" + clause.attr + "'");
      return std::nullopt;
    }
    if (!lex_number(lx, clause.value)) {
      set_error(error, "expected numeric literal");
      return std::nullopt;
    }
    clauses.push_back(std::move(clause));
    if (lx.done()) break;
    std::string kw;
    if (!lex_ident(lx, kw) || kw != "AND") {
      set_error(error, "expected AND between clauses");
      return std::nullopt;
    }
    if (lx.done()) {
      set_error(error, "dangling AND");
      return std::nullopt;
    }
  }
  return Query{std::move(clauses)};
}

Query Query::from_lower_bounds(const Constraint& c) {
  std::vector<QueryClause> clauses;
  clauses.reserve(c.bounds().size());
  for (const auto& [name, bound] : c.bounds())
    clauses.push_back(QueryClause{name, Cmp::kGe, bound});
  return Query{std::move(clauses)};
}

bool Query::eval(const AttributeMap& attrs) const {
  return eval([&](std::string_view name) { return attrs.get(name); });
}

bool Query::eval(const std::function<std::optional<double>(std::string_view)>& lookup) const {
  for (const auto& clause : clauses_) {
    auto value = lookup(clause.attr);
    if (!value || !compare(*value, clause.cmp, clause.value)) return false;
  }
  return true;
}

std::string Query::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (i > 0) out << " AND ";
    out << clauses_[i].attr << to_string(clauses_[i].cmp) << clauses_[i].value;
  }
  return out.str();
}

}  // namespace fedsched
