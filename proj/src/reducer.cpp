#include "fedsched/dataplane/reducer.hpp"

namespace fedsched {

std::unique_ptr<AggState> FedAvgReducer::init() const { return std::make_unique<FedAvgState>(); }

bool FedAvgReducer::absorb(AggState& state, const Contribution& c) const {
  auto& s = static_cast<FedAvgState&>(state);
  if (dimension_ != 0 && c.update.size() != dimension_) return false;
  if (s.n > 0 && c.update.size() != s.weighted_sum.size()) return false;
  if (c.weight < 0) return false;
  if (s.weighted_sum.empty()) s.weighted_sum.assign(c.update.size(), 0.0);
  for (std::size_t i = 0; i < c.update.size(); ++i) s.weighted_sum[i] += c.weight * c.update[i];
  s.total_weight += c.weight;
  s.n += 1;
  return true;
}

void FedAvgReducer::merge(AggState& into, const AggState& from) const {
  auto& dst = static_cast<FedAvgState&>(into);
  const auto& src = static_cast<const FedAvgState&>(from);
  if (src.n == 0) return;
  if (dst.weighted_sum.empty()) dst.weighted_sum.assign(src.weighted_sum.size(), 0.0);
  for (std::size_t i = 0; i < src.weighted_sum.size(); ++i)
    dst.weighted_sum[i] += src.weighted_sum[i];
  dst.total_weight += src.total_weight;
  dst.n += src.n;
}

long long FedAvgReducer::count(const AggState& state) const {
  return static_cast<const FedAvgState&>(state).n;
}

std::optional<std::vector<double>> FedAvgReducer::finalize(const AggState& state) const {
  const auto& s = static_cast<const FedAvgState&>(state);
  if (s.total_weight <= 0.0) return std::nullopt;
  std::vector<double> out(s.weighted_sum.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.weighted_sum[i] / s.total_weight;
  return out;
}

nlohmann::json FedAvgReducer::state_to_json(const AggState& state) const {
  const auto& s = static_cast<const FedAvgState&>(state);
  return nlohmann::json{
      {"weighted_sum", s.weighted_sum}, {"total_weight", s.total_weight}, {"n", s.n}};
}

}  // namespace fedsched
