#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace fedsched::toml {

// Minimal TOML-subset reader covering what experiment configs use:
// comments, [table] / [[array-of-table]] headers (dotted allowed), and
// `key = value` pairs with string, integer, float, boolean, array and
// inline-table values. The result is a JSON object tree.
//
// Throws std::runtime_error with a line-numbered message on malformed input.
nlohmann::json parse(std::string_view text);

nlohmann::json parse_file(const std::string& path);

}  // namespace fedsched::toml
