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

#include "lowregret/adversary.hpp"

#include <cmath>

#include "lowregret/metrics.hpp"
#include "lowregret/models.hpp"

namespace lowregret {

State min_utility_state(const UtilityMatrix& U, const MixedAction& pi) {
  State worst = 0;
  double worst_u = std::numeric_limits<double>::infinity();
  for (State s = 0; s < U.num_states(); ++s) {
    double u = 0.0;
    for (int a = 0; a < U.num_actions(); ++a) u += pi[a] * U(a, s);
    if (u < worst_u) {
      worst_u = u;
      worst = s;
    }
  }
  return worst;
}

namespace {

class FlipAdversary final : public Adversary {
 public:
  explicit FlipAdversary(UtilityMatrix U) : U_(std::move(U)) {}
  State next_state(const MixedAction& pi, std::span<const State>) override {
    return min_utility_state(U_, pi);
  }

 private:
  UtilityMatrix U_;
};

class ConstAdversary final : public Adversary {
 public:
  explicit ConstAdversary(State s) : state_(s) {}
  State next_state(const MixedAction&, std::span<const State>) override { return state_; }

 private:
  State state_;
};

class EnvAdversary final : public Adversary {
 public:
  EnvAdversary(const PredictionModel& env, Rng rng) : eval_(env.make_evaluator()), rng_(rng) {}
  State next_state(const MixedAction&, std::span<const State>) override {
    const StateDist dist = eval_->predict();
    const State s = rng_.categorical(dist.probs());
    eval_->append(s);
    return s;
  }

 private:
  std::unique_ptr<StepEvaluator> eval_;
  Rng rng_;
};

}  // namespace

std::unique_ptr<Adversary> FlipAdversaryFactory::create(Rng) const {
  return std::make_unique<FlipAdversary>(U_);
}

std::unique_ptr<Adversary> ConstAdversaryFactory::create(Rng) const {
  return std::make_unique<ConstAdversary>(state_);
}

std::unique_ptr<Adversary> EnvAdversaryFactory::create(Rng rng) const {
  return std::make_unique<EnvAdversary>(*env_, rng);
}

InteractionResult run_interaction(const PredictionModel& model, const AdversaryFactory& adv,
                                  const UtilityMatrix& U, double eta, int T, std::uint64_t seed,
                                  PolicyKind kind) {
  if (model.alphabet_size() != adv.alphabet_size() ||
      model.alphabet_size() != U.num_states())
    throw std::invalid_argument("model, adversary and utility dimensions disagree");
  if (T > model.horizon()) throw std::invalid_argument("T exceeds the model horizon");

  auto eval = model.make_evaluator();
  auto opponent = adv.create(Rng(seed));
  PolicyTrace trace;
  trace.reserve(T);
  std::vector<State> states;
  states.reserve(T);
  for (int t = 0; t < T; ++t) {
    const StateDist belief = eval->predict();
    MixedAction pi = kind == PolicyKind::kQbr
                         ? quantal_best_response(U, belief, eta)
                         : MixedAction::point(best_response(U, belief), U.num_actions());
    const State s = opponent->next_state(pi, states);
    trace.push_back(std::move(pi));
    states.push_back(s);
    eval->append(s);
  }
  const double regret = external_regret(trace, states, U);
  return InteractionResult{std::move(trace), StateSeq(std::move(states), T), regret};
}

namespace {

RegretStats stats_from(const std::vector<double>& values) {
  RegretStats out;
  out.trials = static_cast<int>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / out.trials;
  if (out.trials > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.ci95 = 1.96 * std::sqrt(ss / (out.trials - 1)) / std::sqrt(static_cast<double>(out.trials));
  }
  return out;
}

}  // namespace

RegretStats interaction_regret_stats(const PredictionModel& model, const AdversaryFactory& adv,
                                     const UtilityMatrix& U, double eta, int T, int trials,
                                     std::uint64_t seed, ExecMode mode, PolicyKind kind) {
  std::vector<double> regrets(trials);
  indexed_for(trials, mode, [&](long i) {
    const std::uint64_t trial_seed = Rng::mix64(seed ^ Rng::mix64(i + 1));
    regrets[i] = run_interaction(model, adv, U, eta, T, trial_seed, kind).regret;
  });
  return stats_from(regrets);
}

ImpossibilityRow impossibility_eval(const PredictionModel& candidate, std::string name, int L,
                                    int T, int trials, std::uint64_t seed, ExecMode mode) {
  if (T != 2 * L) throw std::invalid_argument("the harness fixes T = 2L");
  const UtilityMatrix U = UtilityMatrix::match(2);
  auto table = std::make_shared<DeBruijnTable>(L);
  const DeBruijnModel m0(table, /*flip=*/false, /*eps=*/0.0);
  const DeBruijnModel m1(table, /*flip=*/true, /*eps=*/0.0);

  ImpossibilityRow row;
  row.candidate = std::move(name);
  if (T <= 20) {
    const TvEstimate tv = tv_exact(m0, candidate, T);
    row.tv = tv.value;
    row.tv_ci = 0.0;
  } else {
    const TvEstimate tv = tv_mc(m0, candidate, T, 100000, Rng::mix64(seed) + 17, mode);
    row.tv = tv.value;
    row.tv_ci = tv.ci95;
  }

  const double eta = 1.0 / std::sqrt(static_cast<double>(L));
  std::vector<double> regrets(trials);
  indexed_for(trials, mode, [&](long i) {
    Rng rng = Rng::stream(seed, i);
    const StateSeq seq = sample_sequence(m1, T, rng);
    auto eval = candidate.make_evaluator();
    PolicyTrace trace;
    trace.reserve(T);
    for (State s : seq.states) {
      trace.push_back(quantal_best_response(U, eval->predict(), eta));
      eval->append(s);
    }
    regrets[i] = external_regret(trace, seq.view(), U);
  });
  const RegretStats rs = stats_from(regrets);
  row.regret = rs.mean;
  row.regret_ci = rs.ci95;
  return row;
}

std::vector<ImpossibilityRow> impossibility_suite(int L, int trials, std::uint64_t seed,
                                                  ExecMode mode) {
  const int T = 2 * L;
  auto table = std::make_shared<DeBruijnTable>(L);
  const DeBruijnModel m0(table, false, 0.0);
  const DeBruijnModel m1(table, true, 0.0);
  const WindowedModel urn(std::make_shared<PolyaUrnModel>(2), L);
  const ConstantModel coin = ConstantModel::binary(0.5);

  std::vector<ImpossibilityRow> rows;
  rows.push_back(impossibility_eval(m0, "debruijn", L, T, trials, seed + 1, mode));
  rows.push_back(impossibility_eval(m1, "debruijn-flip", L, T, trials, seed + 2, mode));
  rows.push_back(impossibility_eval(urn, "windowed-polya", L, T, trials, seed + 3, mode));
  rows.push_back(impossibility_eval(coin, "const-half", L, T, trials, seed + 4, mode));
  return rows;
}

}  // namespace lowregret
