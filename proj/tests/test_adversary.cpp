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
#include "lowregret/models.hpp"

using namespace lowregret;

namespace {
const UtilityMatrix kMatch = UtilityMatrix::match(2);
}

TEST_CASE("the flip rule minimizes this round's payoff") {
  CHECK(min_utility_state(kMatch, MixedAction::point(1, 2)) == 0);
  CHECK(min_utility_state(kMatch, MixedAction::uniform(2)) == 0);  // tie rule

  Rng rng(1);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<double> values(12);
    for (double& v : values) v = 2.0 * rng.next_unit() - 1.0;
    const UtilityMatrix U(3, 4, std::move(values));
    std::vector<double> p(3);
    double sum = 0.0;
    for (double& x : p) {
      x = rng.next_unit() + 0.01;
      sum += x;
    }
    for (double& x : p) x /= sum;
    const MixedAction pi(std::move(p));
    const State chosen = min_utility_state(U, pi);
    for (State other = 0; other < 4; ++other) {
      double u_chosen = 0.0;
      double u_other = 0.0;
      for (int a = 0; a < 3; ++a) {
        u_chosen += pi[a] * U(a, chosen);
        u_other += pi[a] * U(a, other);
      }
      CHECK(u_chosen <= u_other + 1e-15);
    }
  }
}

TEST_CASE("a deterministic responder forfeits half a point per round") {
  // Pure best responses against the flip rule earn nothing; the best fixed
  // action in hindsight earns at least half the rounds.
  const PolyaUrnModel urn(2);
  const FlipAdversaryFactory flip(kMatch);
  for (int T : {16, 128, 1024}) {
    const InteractionResult run =
        run_interaction(urn, flip, kMatch, 1.0, T, 9, PolicyKind::kBestResponse);
    CHECK(run.regret >= 0.5);
  }
}

TEST_CASE("interaction landmarks") {
  const int T = 1024;
  const double eta = auto_temperature(T);

  // Urn policy against the flip rule: comfortably low regret.
  {
    const PolyaUrnModel urn(2);
    const FlipAdversaryFactory flip(kMatch);
    const double bound =
        3.0 * (std::log(static_cast<double>(T)) + std::log(2.0)) / std::sqrt(static_cast<double>(T));
    const double regret = run_interaction(urn, flip, kMatch, eta, T, 4).regret;
    CHECK(regret <= bound);
    CHECK(regret <= 0.3);
  }

  // A confident wrong constant against constant states: regret approaches 1.
  {
    const ConstantModel wrong(StateDist({1.0 / 3.0, 2.0 / 3.0}));
    const ConstAdversaryFactory zeros(0, 2);
    const double regret = run_interaction(wrong, zeros, kMatch, 1e-6, T, 4).regret;
    CHECK(regret >= 0.999);
  }

  // A perfect oracle of a deterministic adversary never regrets.
  {
    const ConstantModel oracle(StateDist::point(0, 2));
    const ConstAdversaryFactory zeros(0, 2);
    CHECK(run_interaction(oracle, zeros, kMatch, 1e-9, T, 4).regret <= 0.0);
  }
}

TEST_CASE("environment adversaries reproduce their model") {
  const int T = 2048;
  auto coin = std::make_shared<PiecewiseBernoulliModel>(
      std::vector<std::pair<int, double>>{{1, 0.25}});
  const EnvAdversaryFactory env(coin);
  const ConstantModel any(StateDist({0.5, 0.5}));
  const InteractionResult run = run_interaction(any, env, kMatch, 1.0, T, 123);
  double ones = 0.0;
  for (State s : run.states.states) ones += s;
  CHECK(std::abs(ones / T - 0.25) < 0.03);
}

TEST_CASE("stats helper aggregates independent trials") {
  const PolyaUrnModel urn(2);
  auto env = EnvAdversaryFactory(std::make_shared<PeriodicDriftModel>(64.0));
  const RegretStats stats =
      interaction_regret_stats(urn, env, kMatch, auto_temperature(256), 256, 32, 5,
                               ExecMode::kSerial);
  CHECK(stats.trials == 32);
  CHECK(stats.ci95 > 0.0);
  CHECK(stats.mean <= 0.5);
}

TEST_CASE("tradeoff harness pins the model pair against each candidate") {
  const int L = 6;
  const int T = 2 * L;
  auto table = std::make_shared<DeBruijnTable>(L);
  const DeBruijnModel m0(table, false, 0.0);
  const DeBruijnModel m1(table, true, 0.0);

  const ImpossibilityRow self = impossibility_eval(m0, "self", L, T, 64, 3, ExecMode::kSerial);
  CHECK(self.tv == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(self.regret >= 0.25);

  const ImpossibilityRow other = impossibility_eval(m1, "other", L, T, 64, 3, ExecMode::kSerial);
  CHECK(other.tv == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(other.regret <= 0.05);

  CHECK_THROWS_AS(impossibility_eval(m0, "bad", L, T + 1, 4, 3, ExecMode::kSerial),
                  std::invalid_argument);
}

TEST_CASE("the built-in candidate suite clears the tradeoff bound") {
  for (const ImpossibilityRow& row : impossibility_suite(6, 64, 11, ExecMode::kSerial)) {
    CHECK(row.sum() >= 1.0 / 12.0);
  }
}
