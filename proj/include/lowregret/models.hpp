// Copyright 2026 The lowregret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOWREGRET_MODELS_HPP_
#define LOWREGRET_MODELS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "lowregret/core.hpp"

namespace lowregret {

// Laplace-smoothed empirical predictor over the whole prefix:
//   P(next = s | prefix) = (1 + #occurrences of s) / (|States| + prefix length).
StateDist polya_predict(std::span<const State> prefix, int alphabet_size);

class PolyaUrnModel final : public PredictionModel {
 public:
  explicit PolyaUrnModel(int alphabet_size = 2) : alphabet_(alphabet_size) {}

  StateDist predict(std::span<const State> prefix) const override {
    return polya_predict(prefix, alphabet_.size);
  }
  int alphabet_size() const override { return alphabet_.size; }
  std::unique_ptr<StepEvaluator> make_evaluator() const override;  // count cache

 private:
  StateAlphabet alphabet_;
};

// Independent-bit model over {0,1} whose success probability changes at fixed
// rounds: schedule entries are (first round, P(state = 1)), with the first
// entry starting at round 1 and start rounds strictly increasing.
class PiecewiseBernoulliModel final : public PredictionModel {
 public:
  explicit PiecewiseBernoulliModel(std::vector<std::pair<int, double>> schedule);

  double p_one_at_round(int t) const;  // rounds are 1-indexed

  StateDist predict(std::span<const State> prefix) const override {
    const double p = p_one_at_round(static_cast<int>(prefix.size()) + 1);
    return StateDist({1.0 - p, p});
  }
  int alphabet_size() const override { return 2; }
  const std::vector<std::pair<int, double>>& schedule() const { return schedule_; }

 private:
  std::vector<std::pair<int, double>> schedule_;
};

// Independent-bit model with P(state_t = 1) = |sin(pi/6 + t*pi/phi)|.
class PeriodicDriftModel final : public PredictionModel {
 public:
  explicit PeriodicDriftModel(double phi);

  double p_one_at_round(int t) const;

  StateDist predict(std::span<const State> prefix) const override {
    const double p = p_one_at_round(static_cast<int>(prefix.size()) + 1);
    return StateDist({1.0 - p, p});
  }
  int alphabet_size() const override { return 2; }
  double phi() const { return phi_; }

 private:
  double phi_;
};

// Binary de Bruijn successor table of order L: the cyclic sequence realized
// by an Eulerian cycle on the order-L de Bruijn graph, exposed as the map
// window -> following bit. Windows are encoded as L-bit integers with the
// oldest bit highest, so sliding is (w << 1 | bit) & mask. Hierholzer with
// edge order 0-before-1 from the all-zero vertex keeps the cycle fixed.
class DeBruijnTable {
 public:
  explicit DeBruijnTable(int order);

  int order() const { return order_; }
  int successor(std::uint32_t window) const { return succ_[window]; }
  std::uint32_t num_windows() const { return static_cast<std::uint32_t>(succ_.size()); }

 private:
  int order_;
  std::vector<std::uint8_t> succ_;
};

// Near-deterministic order-L Markov model over {0,1}: uniform for the first
// L rounds, then mass 1-eps on the de Bruijn successor of the last L bits
// (or on its complement when flipped). eps = 0 gives the deterministic pair;
// a small eps restores full support without changing anything else.
class DeBruijnModel final : public PredictionModel {
 public:
  DeBruijnModel(int order, bool flip, double eps);
  DeBruijnModel(std::shared_ptr<const DeBruijnTable> table, bool flip, double eps);

  StateDist predict(std::span<const State> prefix) const override;
  int alphabet_size() const override { return 2; }
  std::optional<int> context_bound() const override { return table_->order(); }

  bool flipped() const { return flip_; }
  double eps() const { return eps_; }
  const DeBruijnTable& table() const { return *table_; }

 private:
  std::shared_ptr<const DeBruijnTable> table_;
  bool flip_;
  double eps_;
};

// Wrapper truncating the prefix to its last w states before delegating.
class WindowedModel final : public PredictionModel {
 public:
  WindowedModel(ModelPtr base, int window);

  StateDist predict(std::span<const State> prefix) const override {
    if (static_cast<int>(prefix.size()) > window_)
      prefix = prefix.subspan(prefix.size() - window_);
    return base_->predict(prefix);
  }
  int alphabet_size() const override { return base_->alphabet_size(); }
  int horizon() const override { return base_->horizon(); }
  std::optional<int> context_bound() const override { return window_; }
  const PredictionModel& base() const { return *base_; }
  int window() const { return window_; }

 private:
  ModelPtr base_;
  int window_;
};

// Prefix-independent forecaster.
class ConstantModel final : public PredictionModel {
 public:
  explicit ConstantModel(StateDist dist) : dist_(std::move(dist)) {}
  static ConstantModel binary(double p_one) { return ConstantModel(StateDist({1.0 - p_one, p_one})); }

  StateDist predict(std::span<const State>) const override { return dist_; }
  int alphabet_size() const override { return dist_.size(); }
  std::optional<int> context_bound() const override { return 0; }

 private:
  StateDist dist_;
};

// Independent-bit environments double as samplers; drawing T rounds from one
// is plain autoregressive sampling of its product-form model.
inline StateSeq env_sample(const PredictionModel& env, int T, std::uint64_t seed) {
  return sample_sequence(env, T, seed);
}

}  // namespace lowregret

#endif  // LOWREGRET_MODELS_HPP_
