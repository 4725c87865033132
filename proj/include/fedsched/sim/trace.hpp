#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fedsched/domain/client.hpp"

namespace fedsched {

// One client of a trace file: availability interval, capabilities, and the
// region label that picks its home leaf server. One JSON object per line.
struct TraceRecord {
  ClientInfo info;
  std::string region;

  nlohmann::json to_json() const;
  static TraceRecord from_json(const nlohmann::json& j);
};

std::vector<TraceRecord> load_trace(const std::string& path);
void save_trace(const std::string& path, const std::vector<TraceRecord>& trace);

struct TraceGenParams {
  std::uint64_t seed = 1;
  int clients = 100;
  TimeMs arrival_span = 5'400'000;  // arrivals uniform over [0, span)
  TimeMs avail_min = 600'000;       // availability duration bounds
  TimeMs avail_max = 1'500'000;
  int regions = 8;
};

// Synthetic trace: tiered device capabilities and single availability
// intervals drawn from seeded distributions. Public attributes are
// {cpu_f, ram, fp16_mem, android_os}; private are
// {dataset_size, sample_quality}.
std::vector<TraceRecord> generate_trace(const TraceGenParams& params);

}  // namespace fedsched
