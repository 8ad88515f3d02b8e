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

#include "lowregret/core.hpp"
#include "lowregret/models.hpp"

using namespace lowregret;

TEST_CASE("probability vectors validate and repair rounding drift") {
  CHECK_THROWS_AS(StateDist({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(StateDist({-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(StateDist(std::vector<double>{}), std::invalid_argument);

  // Drift below 1e-9 renormalizes, tiny negatives clamp.
  const StateDist d({0.5 + 2e-10, 0.5});
  CHECK(d[0] + d[1] == doctest::Approx(1.0).epsilon(1e-15));
  const StateDist e({1.0 + 5e-13, -5e-13});
  CHECK(e[1] == 0.0);

  const MixedAction u = MixedAction::uniform(4);
  CHECK(u[3] == doctest::Approx(0.25));
  const StateDist p = StateDist::point(1, 2);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 1.0);
}

TEST_CASE("utility matrices reject out-of-range entries") {
  CHECK_THROWS_AS(UtilityMatrix(2, 2, {0.0, 1.5, 0.0, 0.0}), std::invalid_argument);
  const UtilityMatrix match = UtilityMatrix::match(3);
  CHECK(match(1, 1) == 1.0);
  CHECK(match(1, 2) == 0.0);
}

TEST_CASE("sampling a point mass is deterministic") {
  const ConstantModel model(StateDist::point(0, 2));
  const StateSeq seq = sample_sequence(model, 4, 7u);
  CHECK(seq.states == std::vector<State>{0, 0, 0, 0});
}

TEST_CASE("first urn draw is a fair coin") {
  const PolyaUrnModel urn(2);
  int zeros = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    if (sample_sequence(urn, 1, Rng::stream(42, i).next_u64()).states[0] == 0) ++zeros;
  }
  CHECK(std::abs(zeros / static_cast<double>(trials) - 0.5) < 0.02);
}

TEST_CASE("piecewise bits land near the schedule in the second half") {
  const PiecewiseBernoulliModel model({{1, 1.0 / 3.0}, {513, 2.0 / 3.0}});
  double second_half_mean = 0.0;
  const int trials = 128;
  const int T = 1024;
  for (int i = 0; i < trials; ++i) {
    const StateSeq seq = sample_sequence(model, T, Rng::stream(9, i).next_u64());
    for (int t = 512; t < T; ++t) second_half_mean += seq.states[t];
  }
  second_half_mean /= trials * 512.0;
  CHECK(std::abs(second_half_mean - 2.0 / 3.0) < 0.02);
}

TEST_CASE("log likelihood basics") {
  const ConstantModel fair(StateDist::uniform(2));
  const std::vector<State> three{1, 0, 1};
  CHECK(log_likelihood(fair, three) == doctest::Approx(std::log(1.0 / 8.0)).epsilon(1e-12));

  const ConstantModel point(StateDist::point(0, 2));
  const std::vector<State> blocked{0, 1};
  CHECK(log_likelihood(point, blocked) == -std::numeric_limits<double>::infinity());

  // Urn chain 1,0,1: 1/2 * 1/3 * 1/2.
  const PolyaUrnModel urn(2);
  const std::vector<State> chain{1, 0, 1};
  CHECK(log_likelihood(urn, chain) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-12));
}

TEST_CASE("sequence probabilities sum to one over full enumerations") {
  auto total_mass = [](const PredictionModel& m, int T) {
    double total = 0.0;
    std::vector<State> seq(T, 0);
    for (int code = 0; code < (1 << T); ++code) {
      for (int t = 0; t < T; ++t) seq[t] = (code >> t) & 1;
      total += std::exp(log_likelihood(m, seq));
    }
    return total;
  };
  CHECK(total_mass(PolyaUrnModel(2), 9) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(total_mass(PiecewiseBernoulliModel({{1, 0.3}, {5, 0.8}}), 8) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(total_mass(WindowedModel(std::make_shared<PolyaUrnModel>(2), 3), 8) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bounded models depend only on their window") {
  const WindowedModel model(std::make_shared<PolyaUrnModel>(2), 4);
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<State> prefix(10);
    for (State& s : prefix) s = rng.bernoulli(0.5);
    const StateDist full = model.predict(prefix);
    const StateDist suffix =
        model.predict(std::span<const State>(prefix).subspan(prefix.size() - 4));
    CHECK(full[0] == suffix[0]);
    CHECK(full[1] == suffix[1]);
  }
}

TEST_CASE("evaluators replay the pure prediction path") {
  const PolyaUrnModel urn(3);
  auto eval = urn.make_evaluator();
  std::vector<State> prefix;
  Rng rng(11);
  for (int t = 0; t < 64; ++t) {
    const StateDist from_eval = eval->predict();
    const StateDist from_model = urn.predict(prefix);
    for (int s = 0; s < 3; ++s) CHECK(from_eval[s] == from_model[s]);
    const State next = static_cast<State>(rng.next_u64() % 3);
    eval->append(next);
    prefix.push_back(next);
  }
}

TEST_CASE("rng streams are deterministic and decorrelated") {
  Rng a = Rng::stream(123, 0);
  Rng b = Rng::stream(123, 0);
  Rng c = Rng::stream(123, 1);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() != c.next_u64());
  const double u = Rng(5).next_unit();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}
