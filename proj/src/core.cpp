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

#include "lowregret/core.hpp"

#include <cmath>

namespace lowregret {

namespace detail {

void validate_probs(std::vector<double>& p) {
  if (p.empty()) throw std::invalid_argument("empty probability vector");
  double sum = 0.0;
  for (double& v : p) {
    if (std::isnan(v)) throw std::invalid_argument("NaN probability entry");
    if (v < 0.0) {
      if (v < -1e-12) throw std::invalid_argument("negative probability entry");
      v = 0.0;
    }
    sum += v;
  }
  const double drift = std::abs(sum - 1.0);
  if (drift > 1e-9)
    throw std::invalid_argument("probability vector sums to " + std::to_string(sum));
  if (drift > 1e-12) {
    for (double& v : p) v /= sum;
  }
}

}  // namespace detail

UtilityMatrix::UtilityMatrix(int num_actions, int num_states, std::vector<double> values)
    : num_actions_(num_actions), num_states_(num_states), values_(std::move(values)) {
  if (num_actions < 2 || num_states < 2)
    throw std::invalid_argument("utility matrix needs >= 2 actions and states");
  if (values_.size() != static_cast<std::size_t>(num_actions) * num_states)
    throw std::invalid_argument("utility matrix size mismatch");
  for (double v : values_) {
    if (!(v >= -1.0 && v <= 1.0))
      throw std::invalid_argument("utility entry outside [-1, 1]");
  }
}

UtilityMatrix UtilityMatrix::match(int n) {
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
  return UtilityMatrix(n, n, std::move(v));
}

namespace {

// Fallback evaluator: store the prefix and call the pure predict each step.
class ReplayEvaluator final : public StepEvaluator {
 public:
  explicit ReplayEvaluator(const PredictionModel& model) : model_(model) {}

  StateDist predict() override { return model_.predict(prefix_); }
  void append(State s) override { prefix_.push_back(s); }
  int position() const override { return static_cast<int>(prefix_.size()); }

 private:
  const PredictionModel& model_;
  std::vector<State> prefix_;
};

}  // namespace

std::unique_ptr<StepEvaluator> PredictionModel::make_evaluator() const {
  return std::make_unique<ReplayEvaluator>(*this);
}

StateSeq sample_sequence(const PredictionModel& model, int T, Rng& rng) {
  if (T > model.horizon()) throw std::invalid_argument("T exceeds the model horizon");
  if (T < 1) throw std::invalid_argument("T must be positive");
  auto eval = model.make_evaluator();
  std::vector<State> out;
  out.reserve(T);
  for (int t = 0; t < T; ++t) {
    const StateDist dist = eval->predict();
    dist.debug_validate();
    const State s = rng.categorical(dist.probs());
    out.push_back(s);
    eval->append(s);
  }
  return StateSeq(std::move(out), T);
}

StateSeq sample_sequence(const PredictionModel& model, int T, std::uint64_t seed) {
  Rng rng(seed);
  return sample_sequence(model, T, rng);
}

double log_likelihood(const PredictionModel& model, std::span<const State> seq) {
  if (static_cast<int>(seq.size()) > model.horizon())
    throw std::invalid_argument("sequence longer than the model horizon");
  auto eval = model.make_evaluator();
  double ll = 0.0;
  for (State s : seq) {
    const StateDist dist = eval->predict();
    const double p = dist[s];
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += std::log(p);
    eval->append(s);
  }
  return ll;
}

}  // namespace lowregret
