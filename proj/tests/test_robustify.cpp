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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowregret/adversary.hpp"
#include "lowregret/metrics.hpp"
#include "lowregret/models.hpp"
#include "lowregret/robustify.hpp"

using namespace lowregret;

namespace {

std::shared_ptr<PiecewiseBernoulliModel> half_bernoulli(int T) {
  return std::make_shared<PiecewiseBernoulliModel>(
      std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {T / 2 + 1, 2.0 / 3.0}});
}

}  // namespace

TEST_CASE("incremental scan, replay and literal rescan agree bit for bit") {
  const int T = 64;
  auto base = half_bernoulli(T);
  const RobustModel model(base, UtilityMatrix::match(2), T, 1.0);

  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::stream(101, trial);
    std::vector<State> seq(T - 1);
    for (State& s : seq) s = rng.bernoulli(0.3) ? 1 : 0;

    auto eval = model.make_evaluator();
    for (int n = 0; n < T - 1; ++n) {
      const auto prefix = std::span<const State>(seq).first(n);
      const StateDist incremental = eval->predict();
      const StateDist replay = model.predict(prefix);
      const StateDist rescan = model.predict_rescan(prefix);
      for (int s = 0; s < 2; ++s) {
        CHECK(incremental[s] == replay[s]);
        CHECK(incremental[s] == rescan[s]);
      }
      eval->append(seq[n]);
    }
  }
}

TEST_CASE("the three paths also agree across a switch") {
  const int T = 256;
  auto base = std::make_shared<ConstantModel>(StateDist({1.0 / 3.0, 2.0 / 3.0}));
  const RobustModel model(base, UtilityMatrix::match(2), T, 1.0);
  const std::vector<State> zeros(T - 1, 0);
  REQUIRE(model.switch_time(zeros).tau.has_value());

  auto eval = model.make_evaluator();
  for (int n = 0; n < T - 1; ++n) {
    const auto prefix = std::span<const State>(zeros).first(n);
    const StateDist incremental = eval->predict();
    const StateDist rescan = model.predict_rescan(prefix);
    CHECK(incremental[0] == rescan[0]);
    CHECK(incremental[1] == rescan[1]);
    eval->append(0);
  }
}

TEST_CASE("without a switch the wrapper is transparent") {
  const int T = 32;
  auto base = half_bernoulli(T);
  const RobustModel model(base, UtilityMatrix::match(2), T, 1.0);
  // At T = 32 the threshold exceeds any achievable regret gap at every s, so
  // the condition never fires and every prediction equals the base's.
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<State> prefix(rng.next_u64() % (T - 1));
    for (State& s : prefix) s = rng.bernoulli(0.5);
    const StateDist a = model.predict(prefix);
    const StateDist b = base->predict(prefix);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
    CHECK_FALSE(model.switch_time(prefix).tau.has_value());
  }
}

TEST_CASE("a confidently wrong model is evicted on all-zero states") {
  const int T = 1024;
  auto base = std::make_shared<ConstantModel>(StateDist({1.0 / 3.0, 2.0 / 3.0}));
  const RobustModel model(base, UtilityMatrix::match(2), T, 1.0);
  const std::vector<State> zeros(T - 1, 0);

  const SwitchReport report = model.switch_time(zeros);
  REQUIRE(report.tau.has_value());
  CHECK(*report.tau <= 600);
  CHECK(report.gap >= report.threshold);

  // The condition at tau replays under the literal definition too.
  const auto prefix = std::span<const State>(zeros).first(*report.tau);
  const StateDist after = model.predict(prefix);
  const StateDist urn = polya_predict(prefix, 2);
  CHECK(after[0] == urn[0]);

  // Once fired, longer prefixes stay on the urn branch.
  for (int extra : {1, 7, 50}) {
    const auto longer = std::span<const State>(zeros).first(*report.tau + extra);
    const StateDist d = model.predict(longer);
    CHECK(d[0] == polya_predict(longer, 2)[0]);
  }
}

TEST_CASE("an enormous alpha disables switching") {
  const int T = 1024;
  auto base = std::make_shared<ConstantModel>(StateDist({1.0 / 3.0, 2.0 / 3.0}));
  const RobustModel model(base, UtilityMatrix::match(2), T, 1e6);
  const std::vector<State> zeros(T - 1, 0);
  CHECK_FALSE(model.switch_time(zeros).tau.has_value());
  const StateDist d = model.predict(std::span<const State>(zeros).first(T - 1));
  CHECK(d[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("the hostile trajectory triggers the switch") {
  const int T = 1024;
  auto base = std::make_shared<ConstantModel>(StateDist({1.0 / 3.0, 2.0 / 3.0}));
  const RobustModel model(base, UtilityMatrix::match(2), T, 1.0);
  const UtilityMatrix match = UtilityMatrix::match(2);
  const FlipAdversaryFactory flip(match);
  const InteractionResult run =
      run_interaction(model, flip, match, auto_temperature(T), T, 3);
  CHECK(model.switch_time(run.states.view()).tau.has_value());
}

TEST_CASE("switching is rare on the model's own distribution") {
  const int T = 1024;
  auto base = half_bernoulli(T);
  const RobustModel model(base, UtilityMatrix::match(2), T, 1.0);
  int switched = 0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(55, i);
    const StateSeq seq = sample_sequence(*base, T, rng);
    if (model.switch_time(seq.view()).tau.has_value()) ++switched;
  }
  CHECK(static_cast<double>(switched) / trials <= 0.01);
}

TEST_CASE("exact sequence distance to the base stays inside the guarantee") {
  const int T = 10;
  auto base = std::make_shared<PiecewiseBernoulliModel>(
      std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {6, 2.0 / 3.0}});
  const RobustModel model(base, UtilityMatrix::match(2), T, 1.0);
  const TvEstimate tv = tv_exact(model, *base, T);
  CHECK(tv.value <= 2.0 * std::pow(10.0, -1.0));
  // Regression value: at this scale the threshold exceeds the largest
  // possible regret gap, so the branch never fires and the distance is zero.
  CHECK(tv.value == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("horizon preconditions are enforced") {
  auto base = half_bernoulli(16);
  const RobustModel model(base, UtilityMatrix::match(2), 16, 1.0);
  const std::vector<State> too_long(16, 0);
  CHECK_THROWS_AS(model.predict(too_long), std::invalid_argument);
  CHECK_THROWS_AS(RobustModel(base, UtilityMatrix::match(2), 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RobustModel(base, UtilityMatrix::match(2), 16, 0.0), std::invalid_argument);
}
