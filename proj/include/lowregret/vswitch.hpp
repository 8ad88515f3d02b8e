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

#ifndef LOWREGRET_VSWITCH_HPP_
#define LOWREGRET_VSWITCH_HPP_

#include "lowregret/core.hpp"
#include "lowregret/robustify.hpp"

namespace lowregret {

// Utility-agnostic robustification for binary states. Forecast quality is
// scored against the one-parameter family of V-shaped proper losses, whose
// tips cover every binary decision problem; a model whose forecasts stay
// competitive with the best constant under every tip is low-regret for any
// downstream decision maker, whatever its utility matrix.

struct VScoreParams {
  double eps;         // tip grid step; grid is {0, eps, 2*eps, ..., 1}
  double delta;       // confidence level of the switching test
  double c = 1.0;     // concentration constant in the threshold
  double loss_bound = 1.0;  // B; the V-shaped family satisfies |loss| <= 1

  // eps = 1/T and delta = T^-(1+alpha).
  static VScoreParams defaults(int T, double alpha = 1.0);
};

// The V-shaped proper loss with tip v, in closed piecewise-constant form:
//   p < v: (-v, 1-v)   for outcomes (0, 1)
//   p > v: ( v, v-1)
//   p = v: ( 0, 0)
// This is the bivariate rule induced by the univariate -|p - v| with
// subgradient sign(v - p); a property test pins the equivalence.
double v_score(double v, double p, int y);

// Average V-loss of the forecasts plus the gap to the best constant
// forecast in hindsight. The best-constant term has the closed form
// -|mean(outcomes) - v|, so the regret is (1/t) * sum_s loss + |qhat - v|.
double v_regret(double v, std::span<const double> forecasts, std::span<const State> outcomes);

std::vector<double> v_grid(double eps);

// max over grid tips of v_regret. The fast path sorts the forecasts once and
// sweeps the grid with running counts (O(N + t log t)); v_gap_naive is the
// direct O(N * t) reference scan it must match exactly.
double v_gap(std::span<const double> forecasts, std::span<const State> outcomes, double eps);
double v_gap_naive(std::span<const double> forecasts, std::span<const State> outcomes,
                   double eps);

// Switching test margin b(t) = c * B * sqrt(ln(N * t^2 / delta) / t).
double v_threshold(int t, const VScoreParams& params);

// One-way switch on the V-regret gap: at round t the model outputs the base
// forecast until max-tip regret of the base's past forecasts exceeds the
// threshold, and the urn prediction from then on. Pure function of the
// prefix; the evaluator keeps running per-tip loss sums so a step costs
// O(grid size).
class VSwitchModel final : public PredictionModel {
 public:
  VSwitchModel(ModelPtr base, VScoreParams params, int T);

  StateDist predict(std::span<const State> prefix) const override;
  int alphabet_size() const override { return 2; }
  int horizon() const override { return T_; }
  std::unique_ptr<StepEvaluator> make_evaluator() const override;

  // First round whose output is the urn prediction, if any along seq.
  SwitchReport switch_time(std::span<const State> seq) const;

  const PredictionModel& base() const { return *base_; }
  const VScoreParams& params() const { return params_; }

 private:
  ModelPtr base_;
  VScoreParams params_;
  int T_;
};

}  // namespace lowregret

#endif  // LOWREGRET_VSWITCH_HPP_
