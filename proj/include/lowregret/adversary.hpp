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

#ifndef LOWREGRET_ADVERSARY_HPP_
#define LOWREGRET_ADVERSARY_HPP_

#include <string>

#include "lowregret/core.hpp"
#include "lowregret/parallel.hpp"
#include "lowregret/regret.hpp"

namespace lowregret {

// Full-information opponent: sees the decision maker's mixed action for the
// round (and the public history) and returns the round's state.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual State next_state(const MixedAction& pi, std::span<const State> history) = 0;
};

// Reusable recipe producing one adversary instance per trial; stochastic
// environments get their own RNG stream so trials stay independent.
class AdversaryFactory {
 public:
  virtual ~AdversaryFactory() = default;
  virtual std::unique_ptr<Adversary> create(Rng rng) const = 0;
  virtual int alphabet_size() const = 0;
};

// Plays the state minimizing the decision maker's expected utility this
// round (lowest index on ties).
class FlipAdversaryFactory final : public AdversaryFactory {
 public:
  explicit FlipAdversaryFactory(UtilityMatrix U) : U_(std::move(U)) {}
  std::unique_ptr<Adversary> create(Rng rng) const override;
  int alphabet_size() const override { return U_.num_states(); }

 private:
  UtilityMatrix U_;
};

class ConstAdversaryFactory final : public AdversaryFactory {
 public:
  ConstAdversaryFactory(State s, int alphabet) : state_(s), alphabet_(alphabet) {
    if (s < 0 || s >= alphabet) throw std::invalid_argument("constant state out of range");
  }
  std::unique_ptr<Adversary> create(Rng rng) const override;
  int alphabet_size() const override { return alphabet_; }

 private:
  State state_;
  int alphabet_;
};

// Stochastic environment: ignores the decision maker and samples states
// autoregressively from a model.
class EnvAdversaryFactory final : public AdversaryFactory {
 public:
  explicit EnvAdversaryFactory(ModelPtr env) : env_(std::move(env)) {
    if (!env_) throw std::invalid_argument("environment adversary needs a model");
  }
  std::unique_ptr<Adversary> create(Rng rng) const override;
  int alphabet_size() const override { return env_->alphabet_size(); }

 private:
  ModelPtr env_;
};

// The state minimizer itself, shared by the flip adversary and its tests.
State min_utility_state(const UtilityMatrix& U, const MixedAction& pi);

enum class PolicyKind { kQbr, kBestResponse };

struct InteractionResult {
  PolicyTrace trace;
  StateSeq states;
  double regret;
};

// Plays T rounds of pi_t = QBR(model(theta^{t-1}), eta) (or the pure best
// response) against the adversary and scores the realized trace.
InteractionResult run_interaction(const PredictionModel& model, const AdversaryFactory& adv,
                                  const UtilityMatrix& U, double eta, int T,
                                  std::uint64_t seed, PolicyKind kind = PolicyKind::kQbr);

struct RegretStats {
  double mean = 0.0;
  double ci95 = 0.0;  // normal-approximation half width
  int trials = 0;
};

RegretStats interaction_regret_stats(const PredictionModel& model, const AdversaryFactory& adv,
                                     const UtilityMatrix& U, double eta, int T, int trials,
                                     std::uint64_t seed, ExecMode mode = ExecMode::kParallel,
                                     PolicyKind kind = PolicyKind::kQbr);

// Bounded-context tradeoff harness. Builds the de Bruijn model pair (M0
// following the cycle, M1 its complement, eps = 0) at order L with T = 2L and
// the matching utility, then measures for a candidate model both
//   - the TV distance between the candidate's sequence distribution and M0's
//     (exact enumeration for T <= 20, Monte Carlo otherwise), and
//   - the mean external regret of QBR(candidate, 1/sqrt(L)) on sequences
//     drawn from M1.
// No L-bounded candidate can make both small; the built-in suite checks
// tv + regret >= 1/12 for concrete candidates.
struct ImpossibilityRow {
  std::string candidate;
  double tv = 0.0;
  double tv_ci = 0.0;
  double regret = 0.0;
  double regret_ci = 0.0;
  double sum() const { return tv + regret; }
};

ImpossibilityRow impossibility_eval(const PredictionModel& candidate, std::string name, int L,
                                    int T, int trials, std::uint64_t seed,
                                    ExecMode mode = ExecMode::kParallel);

// Candidates: M0, M1, the L-windowed urn predictor, and the constant 1/2.
std::vector<ImpossibilityRow> impossibility_suite(int L, int trials, std::uint64_t seed,
                                                  ExecMode mode = ExecMode::kParallel);

}  // namespace lowregret

#endif  // LOWREGRET_ADVERSARY_HPP_
