#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

namespace fedsched {

// One client's round result: an update vector plus a weight (e.g. local
// sample count).
struct Contribution {
  std::vector<double> update;
  double weight = 1.0;
};

class AggState {
 public:
  virtual ~AggState() = default;
  virtual std::unique_ptr<AggState> clone() const = 0;
};

// Associative-commutative aggregation plugin. merge must commute and
// associate up to numeric tolerance, absorb(s, c) must equal
// merge(s, absorb(init(), c)), and count must be additive under merge —
// that is what lets intermediate servers partially aggregate.
class Reducer {
 public:
  virtual ~Reducer() = default;
  virtual std::unique_ptr<AggState> init() const = 0;
  virtual bool absorb(AggState& state, const Contribution& c) const = 0;
  virtual void merge(AggState& into, const AggState& from) const = 0;
  virtual long long count(const AggState& state) const = 0;
  // Final per-round value; nullopt when the state holds nothing reducible.
  virtual std::optional<std::vector<double>> finalize(const AggState& state) const = 0;
  virtual nlohmann::json state_to_json(const AggState& state) const = 0;
};

// Weighted-average state: running weighted sum, total weight, contribution
// count.
class FedAvgState : public AggState {
 public:
  std::vector<double> weighted_sum;
  double total_weight = 0.0;
  long long n = 0;

  std::unique_ptr<AggState> clone() const override {
    return std::make_unique<FedAvgState>(*this);
  }
};

class FedAvgReducer : public Reducer {
 public:
  // dimension 0 accepts the first contribution's shape; otherwise absorb
  // rejects mismatching vectors.
  explicit FedAvgReducer(std::size_t dimension = 0) : dimension_(dimension) {}

  std::unique_ptr<AggState> init() const override;
  bool absorb(AggState& state, const Contribution& c) const override;
  void merge(AggState& into, const AggState& from) const override;
  long long count(const AggState& state) const override;
  std::optional<std::vector<double>> finalize(const AggState& state) const override;
  nlohmann::json state_to_json(const AggState& state) const override;

 private:
  std::size_t dimension_;
};

}  // namespace fedsched
