#include "fedsched/util/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fedsched::toml {
namespace {

using nlohmann::json;

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("toml: line " + std::to_string(line) + ": " + msg);
  }
};

void skip_ws(Cursor& c, bool cross_lines) {
  while (!c.done()) {
    char ch = c.peek();
    if (ch == ' ' || ch == '\t') {
      c.take();
    } else if (ch == '#') {
      while (!c.done() && c.peek() != '\n') c.take();
    } else if (cross_lines && (ch == '\n' || ch == '\r')) {
      c.take();
    } else {
      break;
    }
  }
}

bool is_bare_key_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

std::string parse_key(Cursor& c) {
  skip_ws(c, false);
  if (c.done()) c.fail("expected key");
  if (c.peek() == '"') {
    c.take();
    std::string out;
    while (!c.done() && c.peek() != '"') out.push_back(c.take());
    if (c.done()) c.fail("unterminated quoted key");
    c.take();
    return out;
  }
  std::string out;
  while (!c.done() && is_bare_key_char(c.peek())) out.push_back(c.take());
  if (out.empty()) c.fail("empty key");
  return out;
}

json parse_value(Cursor& c);

json parse_array(Cursor& c) {
  json arr = json::array();
  c.take();  // '['
  while (true) {
    skip_ws(c, true);
    if (c.done()) c.fail("unterminated array");
    if (c.peek() == ']') {
      c.take();
      return arr;
    }
    arr.push_back(parse_value(c));
    skip_ws(c, true);
    if (!c.done() && c.peek() == ',') {
      c.take();
      continue;
    }
    if (!c.done() && c.peek() == ']') {
      c.take();
      return arr;
    }
    c.fail("expected ',' or ']' in array");
  }
}

json parse_inline_table(Cursor& c) {
  json obj = json::object();
  c.take();  // '{'
  skip_ws(c, false);
  if (!c.done() && c.peek() == '}') {
    c.take();
    return obj;
  }
  while (true) {
    std::string key = parse_key(c);
    skip_ws(c, false);
    if (c.done() || c.take() != '=') c.fail("expected '=' in inline table");
    skip_ws(c, false);
    obj[key] = parse_value(c);
    skip_ws(c, false);
    if (c.done()) c.fail("unterminated inline table");
    char ch = c.take();
    if (ch == ',') {
      skip_ws(c, false);
      continue;
    }
    if (ch == '}') return obj;
    c.fail("expected ',' or '}' in inline table");
  }
}

json parse_scalar(Cursor& c) {
  std::string tok;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == ',' || ch == ']' || ch == '}' || ch == '\n' || ch == '\r' || ch == '#' ||
        ch == ' ' || ch == '\t')
      break;
    tok.push_back(c.take());
  }
  if (tok.empty()) c.fail("expected value");
  if (tok == "true") return json(true);
  if (tok == "false") return json(false);
  bool looks_float = tok.find_first_of(".eE") != std::string::npos &&
                     tok.find_first_not_of("+-0123456789.eE") == std::string::npos;
  bool looks_int = tok.find_first_not_of("+-0123456789_") == std::string::npos;
  std::string digits = tok;
  digits.erase(std::remove(digits.begin(), digits.end(), '_'), digits.end());
  try {
    if (looks_int) return json(static_cast<std::int64_t>(std::stoll(digits)));
    if (looks_float) return json(std::stod(digits));
  } catch (const std::exception&) {
    c.fail("bad number '" + tok + "'");
  }
  c.fail("unrecognized value '" + tok + "'");
}

json parse_value(Cursor& c) {
  skip_ws(c, false);
  if (c.done()) c.fail("expected value");
  char ch = c.peek();
  if (ch == '"') {
    c.take();
    std::string out;
    while (!c.done() && c.peek() != '"') {
      char v = c.take();
      if (v == '\\' && !c.done()) {
        char esc = c.take();
        switch (esc) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '\\': out.push_back('\\'); break;
          case '"': out.push_back('"'); break;
          default: c.fail("unsupported escape");
        }
      } else {
        out.push_back(v);
      }
    }
    if (c.done()) c.fail("unterminated string");
    c.take();
    return json(out);
  }
  if (ch == '[') return parse_array(c);
  if (ch == '{') return parse_inline_table(c);
  return parse_scalar(c);
}

std::vector<std::string> parse_header_path(Cursor& c) {
  std::vector<std::string> path;
  while (true) {
    path.push_back(parse_key(c));
    skip_ws(c, false);
    if (!c.done() && c.peek() == '.') {
      c.take();
      continue;
    }
    break;
  }
  return path;
}

json* descend(json& root, const std::vector<std::string>& path, Cursor& c) {
  json* node = &root;
  for (const auto& key : path) {
    if (!node->is_object()) c.fail("cannot descend into non-table");
    json& next = (*node)[key];
    if (next.is_null()) next = json::object();
    if (next.is_array()) {
      if (next.empty()) c.fail("empty table array");
      node = &next.back();
    } else {
      node = &next;
    }
  }
  return node;
}

void expect_line_end(Cursor& c) {
  skip_ws(c, false);
  if (c.done()) return;
  char ch = c.peek();
  if (ch == '\n' || ch == '\r') return;
  c.fail("trailing characters");
}

}  // namespace

nlohmann::json parse(std::string_view text) {
  Cursor c{text};
  json root = json::object();
  json* current = &root;
  while (true) {
    skip_ws(c, true);
    if (c.done()) break;
    char ch = c.peek();
    if (ch == '[') {
      c.take();
      bool table_array = false;
      if (!c.done() && c.peek() == '[') {
        c.take();
        table_array = true;
      }
      auto path = parse_header_path(c);
      skip_ws(c, false);
      if (c.done() || c.take() != ']') c.fail("expected ']'");
      if (table_array) {
        if (c.done() || c.take() != ']') c.fail("expected ']]'");
        std::vector<std::string> parent(path.begin(), path.end() - 1);
        json* holder = descend(root, parent, c);
        json& arr = (*holder)[path.back()];
        if (arr.is_null()) arr = json::array();
        if (!arr.is_array()) c.fail("table array clashes with existing key");
        arr.push_back(json::object());
        current = &arr.back();
      } else {
        current = descend(root, path, c);
      }
      expect_line_end(c);
      continue;
    }
    std::string key = parse_key(c);
    skip_ws(c, false);
    if (c.done() || c.take() != '=') c.fail("expected '=' after key");
    (*current)[key] = parse_value(c);
    expect_line_end(c);
  }
  return root;
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("toml: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace fedsched::toml
