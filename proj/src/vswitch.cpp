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

#include "lowregret/vswitch.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lowregret/regret.hpp"

namespace lowregret {

VScoreParams VScoreParams::defaults(int T, double alpha) {
  if (T < 1) throw std::invalid_argument("horizon must be positive");
  return VScoreParams{1.0 / T, std::pow(static_cast<double>(T), -(1.0 + alpha)), 1.0, 1.0};
}

double v_score(double v, double p, int y) {
  if (p < v) return y == 0 ? -v : 1.0 - v;
  if (p > v) return y == 0 ? v : v - 1.0;
  return 0.0;
}

double v_regret(double v, std::span<const double> forecasts, std::span<const State> outcomes) {
  const int t = static_cast<int>(outcomes.size());
  if (t == 0 || forecasts.size() != outcomes.size())
    throw std::invalid_argument("forecasts and outcomes must have equal positive length");
  double loss = 0.0;
  long ones = 0;
  for (int s = 0; s < t; ++s) {
    loss += v_score(v, forecasts[s], outcomes[s]);
    ones += outcomes[s];
  }
  const double qhat = static_cast<double>(ones) / t;
  return loss / t + std::abs(qhat - v);
}

std::vector<double> v_grid(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
  std::vector<double> grid;
  for (long i = 0;; ++i) {
    const double v = static_cast<double>(i) * eps;
    if (v >= 1.0 - 1e-12) break;
    grid.push_back(v);
  }
  grid.push_back(1.0);
  return grid;
}

namespace {

// Grid cardinality without materializing the points.
long v_grid_size(double eps) {
  long n = 0;
  for (long i = 0;; ++i) {
    if (static_cast<double>(i) * eps >= 1.0 - 1e-12) break;
    ++n;
  }
  return n + 1;
}

double threshold_from(long grid_size, int t, const VScoreParams& params) {
  const double td = static_cast<double>(t);
  return params.c * params.loss_bound *
         std::sqrt(std::log(static_cast<double>(grid_size) * td * td / params.delta) / td);
}

}  // namespace

double v_gap_naive(std::span<const double> forecasts, std::span<const State> outcomes,
                   double eps) {
  const std::vector<double> grid = v_grid(eps);
  double best = -std::numeric_limits<double>::infinity();
  for (double v : grid) best = std::max(best, v_regret(v, forecasts, outcomes));
  return best;
}

double v_gap(std::span<const double> forecasts, std::span<const State> outcomes, double eps) {
  const int t = static_cast<int>(outcomes.size());
  if (t == 0 || forecasts.size() != outcomes.size())
    throw std::invalid_argument("forecasts and outcomes must have equal positive length");
  const std::vector<double> grid = v_grid(eps);

  // Sort forecasts once, then sweep the grid keeping counts of forecasts
  // strictly below / equal to the current tip, split by outcome. The loss
  // sum at tip v only depends on those counts:
  //   sum = v*(above0 - below0) + (v-1)*above1 + (1-v)*below1.
  std::vector<std::pair<double, State>> pts(t);
  long total_ones = 0;
  for (int s = 0; s < t; ++s) {
    pts[s] = {forecasts[s], outcomes[s]};
    total_ones += outcomes[s];
  }
  std::sort(pts.begin(), pts.end());
  const double qhat = static_cast<double>(total_ones) / t;

  double best = -std::numeric_limits<double>::infinity();
  std::size_t j = 0;
  long below[2] = {0, 0};
  for (double v : grid) {
    while (j < pts.size() && pts[j].first < v) ++below[pts[j++].second];
    long eq[2] = {0, 0};
    std::size_t k = j;
    while (k < pts.size() && pts[k].first == v) ++eq[pts[k++].second];
    const long above0 = (t - total_ones) - below[0] - eq[0];
    const long above1 = total_ones - below[1] - eq[1];
    const double sum = v * static_cast<double>(above0 - below[0]) +
                       (v - 1.0) * static_cast<double>(above1) +
                       (1.0 - v) * static_cast<double>(below[1]);
    best = std::max(best, sum / t + std::abs(qhat - v));
  }
  return best;
}

double v_threshold(int t, const VScoreParams& params) {
  if (t < 1) throw std::invalid_argument("threshold needs t >= 1");
  return threshold_from(v_grid_size(params.eps), t, params);
}

VSwitchModel::VSwitchModel(ModelPtr base, VScoreParams params, int T)
    : base_(std::move(base)), params_(params), T_(T) {
  if (!base_) throw std::invalid_argument("switching model needs a base model");
  if (base_->alphabet_size() != 2)
    throw std::invalid_argument("V-score switching requires binary states");
  if (T < 1 || T > base_->horizon()) throw std::invalid_argument("bad horizon");
  if (!(params.eps > 0.0 && params.eps <= 1.0))
    throw std::invalid_argument("grid step must lie in (0, 1]");
  if (!(params.delta > 0.0 && params.delta < 1.0))
    throw std::invalid_argument("confidence must lie in (0, 1)");
  if (!(params.c > 0.0)) throw std::invalid_argument("threshold constant must be positive");
}

namespace {

class VSwitchEvaluator final : public StepEvaluator {
 public:
  explicit VSwitchEvaluator(const VSwitchModel& model)
      : model_(model),
        base_eval_(model.base().make_evaluator()),
        grid_(v_grid(model.params().eps)),
        loss_sums_(grid_.size(), 0.0) {}

  StateDist predict() override {
    if (switched_) return urn_from_counts(counts(), total_);
    return base_eval_->predict();
  }

  void append(State s) override {
    if (total_ >= model_.horizon())
      throw std::invalid_argument("sequence longer than the model horizon");
    if (!switched_) {
      const double p0 = base_eval_->predict()[1];
      // Split the grid at the forecast; the V-loss is linear in the tip on
      // each side, so both halves update with straight-line loops.
      const auto split = std::lower_bound(grid_.begin(), grid_.end(), p0);
      std::size_t lo = static_cast<std::size_t>(split - grid_.begin());
      std::size_t eq_end = lo;
      while (eq_end < grid_.size() && grid_[eq_end] == p0) ++eq_end;
      if (s == 0) {
        for (std::size_t i = 0; i < lo; ++i) loss_sums_[i] += grid_[i];
        for (std::size_t i = eq_end; i < grid_.size(); ++i) loss_sums_[i] -= grid_[i];
      } else {
        for (std::size_t i = 0; i < lo; ++i) loss_sums_[i] += grid_[i] - 1.0;
        for (std::size_t i = eq_end; i < grid_.size(); ++i) loss_sums_[i] += 1.0 - grid_[i];
      }
      ++total_;
      ones_ += s;
      const double qhat = static_cast<double>(ones_) / static_cast<double>(total_);
      double gap = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < grid_.size(); ++i)
        gap = std::max(gap, loss_sums_[i] / static_cast<double>(total_) +
                                std::abs(qhat - grid_[i]));
      const double bound =
          threshold_from(static_cast<long>(grid_.size()), static_cast<int>(total_),
                         model_.params());
      if (gap > bound) {
        switched_ = true;
        report_ = SwitchReport{static_cast<int>(total_) + 1, gap, bound};
      } else {
        base_eval_->append(s);
      }
    } else {
      ++total_;
      ones_ += s;
    }
  }

  int position() const override { return static_cast<int>(total_); }
  const SwitchReport& report() const { return report_; }

 private:
  std::array<long long, 2> counts() const { return {total_ - ones_, ones_}; }

  const VSwitchModel& model_;
  std::unique_ptr<StepEvaluator> base_eval_;
  std::vector<double> grid_;
  std::vector<double> loss_sums_;
  long long total_ = 0;
  long long ones_ = 0;
  bool switched_ = false;
  SwitchReport report_;
};

}  // namespace

std::unique_ptr<StepEvaluator> VSwitchModel::make_evaluator() const {
  return std::make_unique<VSwitchEvaluator>(*this);
}

StateDist VSwitchModel::predict(std::span<const State> prefix) const {
  if (static_cast<int>(prefix.size()) >= T_)
    throw std::invalid_argument("prefix reached the model horizon");
  VSwitchEvaluator eval(*this);
  for (State s : prefix) eval.append(s);
  return eval.predict();
}

SwitchReport VSwitchModel::switch_time(std::span<const State> seq) const {
  if (static_cast<int>(seq.size()) > T_)
    throw std::invalid_argument("sequence longer than the model horizon");
  VSwitchEvaluator eval(*this);
  for (State s : seq) {
    eval.append(s);
    if (eval.report().tau) break;
  }
  return eval.report();
}

}  // namespace lowregret
