#include "fedsched/sim/trace.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fedsched/util/rng.hpp"

namespace fedsched {

nlohmann::json TraceRecord::to_json() const {
  return nlohmann::json{{"client_id", info.client_id},
                        {"avail_start", info.avail_start},
                        {"avail_end", info.avail_end},
                        {"public_attrs", info.public_attrs.to_json()},
                        {"private_attrs", info.private_attrs.to_json()},
                        {"speed", info.speed},
                        {"bandwidth", info.bandwidth},
                        {"region", region}};
}

TraceRecord TraceRecord::from_json(const nlohmann::json& j) {
  TraceRecord r;
  r.info.client_id = j.at("client_id").get<std::string>();
  r.info.avail_start = j.at("avail_start").get<TimeMs>();
  r.info.avail_end = j.at("avail_end").get<TimeMs>();
  r.info.public_attrs = AttributeMap::from_json(j.at("public_attrs"));
  r.info.private_attrs = AttributeMap::from_json(j.at("private_attrs"));
  r.info.speed = j.at("speed").get<double>();
  r.info.bandwidth = j.at("bandwidth").get<double>();
  r.region = j.at("region").get<std::string>();
  return r;
}

std::vector<TraceRecord> load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace: " + path);
  std::vector<TraceRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(TraceRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void save_trace(const std::string& path, const std::vector<TraceRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  for (const auto& r : trace) out << r.to_json().dump() << "\n";
}

namespace {

double pick_weighted(Rng& rng, const std::vector<std::pair<double, double>>& table) {
  double u = rng.uniform();
  double acc = 0;
  for (const auto& [value, weight] : table) {
    acc += weight;
    if (u < acc) return value;
  }
  return table.back().first;
}

}  // namespace

std::vector<TraceRecord> generate_trace(const TraceGenParams& params) {
  Rng master(params.seed);
  Rng rng = master.fork("trace");
  std::vector<TraceRecord> out;
  out.reserve(params.clients);
  for (int i = 0; i < params.clients; ++i) {
    TraceRecord r;
    char id[16];
    std::snprintf(id, sizeof(id), "c%06d", i);
    r.info.client_id = id;

    // device capability tiers: ~45% low, ~35% mid, ~20% high
    double tier = rng.uniform();
    double cpu_f;
    if (tier < 0.45) {
      cpu_f = std::floor(rng.uniform(1, 4));
    } else if (tier < 0.80) {
      cpu_f = std::floor(rng.uniform(4, 8));
    } else {
      cpu_f = std::floor(rng.uniform(8, 16));
    }
    double ram = pick_weighted(rng, {{2048, 0.20}, {3072, 0.15}, {4096, 0.25},
                                     {6144, 0.15}, {8192, 0.15}, {12288, 0.10}});
    double fp16 = pick_weighted(rng, {{512, 0.25}, {1024, 0.25}, {2048, 0.20},
                                      {4096, 0.20}, {8192, 0.10}});
    double os = pick_weighted(rng, {{8, 0.08}, {9, 0.12}, {10, 0.20}, {11, 0.25},
                                    {12, 0.20}, {13, 0.15}});
    r.info.public_attrs = AttributeMap{
        {"cpu_f", cpu_f}, {"ram", ram}, {"fp16_mem", fp16}, {"android_os", os}};
    r.info.private_attrs =
        AttributeMap{{"dataset_size", std::floor(rng.uniform(50, 2000))},
                     {"sample_quality", std::floor(rng.uniform(0, 100)) / 100.0}};

    r.info.speed = cpu_f * rng.uniform(0.8, 1.2);
    r.info.bandwidth = rng.uniform(0.5, 2.0);

    r.info.avail_start = (TimeMs)rng.uniform_int((std::uint64_t)params.arrival_span);
    TimeMs duration =
        params.avail_min +
        (TimeMs)rng.uniform_int((std::uint64_t)(params.avail_max - params.avail_min + 1));
    r.info.avail_end = r.info.avail_start + duration;

    r.region = "r" + std::to_string(rng.uniform_int((std::uint64_t)params.regions));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fedsched
