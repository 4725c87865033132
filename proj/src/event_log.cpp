#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fedsched/sim/metrics.hpp"

namespace fedsched {

void EventLog::append(TimeMs t, std::string kind, nlohmann::json fields) {
  events_.push_back(LogEvent{t, std::move(kind), std::move(fields)});
}

std::string EventLog::to_jsonl() const {
  std::ostringstream out;
  write_jsonl(out);
  return out.str();
}

void EventLog::write_jsonl(std::ostream& out) const {
  for (const auto& e : events_) {
    nlohmann::json row = e.fields;
    row["t"] = e.t;
    row["kind"] = e.kind;
    out << row.dump() << "\n";
  }
}

std::vector<LogEvent> EventLog::read_jsonl(std::istream& in) {
  std::vector<LogEvent> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json row = nlohmann::json::parse(line);
    LogEvent e;
    e.t = row.at("t").get<TimeMs>();
    e.kind = row.at("kind").get<std::string>();
    row.erase("t");
    row.erase("kind");
    e.fields = std::move(row);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LogEvent> EventLog::read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log: " + path);
  return read_jsonl(in);
}

}  // namespace fedsched
