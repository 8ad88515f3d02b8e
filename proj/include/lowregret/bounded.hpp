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

#ifndef LOWREGRET_BOUNDED_HPP_
#define LOWREGRET_BOUNDED_HPP_

#include "lowregret/adversary.hpp"
#include "lowregret/core.hpp"
#include "lowregret/robustify.hpp"

namespace lowregret {

// How much of the real sequence the restarted copies' base predictions see.
// kFullContext (default): the base model reads its full window of L real
// tokens at every position, while each copy's regret ledger and urn counts
// restart at the copy offset. kSuffixOnly: the base reads only the copy's
// own suffix, the literal loop reading.
enum class ContextMode { kFullContext, kSuffixOnly };

// Widened-window robustification for binary actions/states. A prediction at
// a prefix of length >= L' looks only at the trailing window of L' states and
// averages Delta = L' - L restarted one-way-switch copies: copy m scans the
// window suffix starting at offset m with horizon Delta and temperature
// 1/sqrt(Delta), producing mu_m (base prediction if it never switched, the
// restarted urn otherwise). The returned belief mu is the preimage of the
// copies' average under QBR, so that
//   QBR(mu, 1/sqrt(Delta)) = (1/Delta) * sum_m QBR(mu_m, 1/sqrt(Delta)).
// Prefixes shorter than L' fall back to the unbounded one-way switch on the
// whole prefix.
class BoundedRobustModel final : public PredictionModel {
 public:
  BoundedRobustModel(ModelPtr base, UtilityMatrix U, int L, int Lp, int T, double alpha,
                     ContextMode mode = ContextMode::kFullContext);

  StateDist predict(std::span<const State> prefix) const override;
  int alphabet_size() const override { return 2; }
  int horizon() const override { return T_; }
  std::optional<int> context_bound() const override { return Lp_; }
  std::unique_ptr<StepEvaluator> make_evaluator() const override;

  int L() const { return L_; }
  int Lp() const { return Lp_; }
  int delta() const { return Lp_ - L_; }
  double alpha() const { return alpha_; }
  ContextMode mode() const { return mode_; }
  const UtilityMatrix& utility() const { return U_; }
  const PredictionModel& base() const { return *base_; }
  const RobustModel& fallback() const { return *fallback_; }

  // Switch threshold for the restarted copies. The concentration term keeps
  // ln T from the global horizon so a union bound over all window positions
  // still leaves total switch probability Delta^(-alpha):
  //   ln|A|/sqrt(Delta) + sqrt(8*(ln T + (1+alpha)*ln Delta)/s).
  double copy_threshold(int s) const;

  struct Diagnostics {
    double max_roundtrip_error = 0.0;  // sup |QBR(mu) - copies' average|
    long clamped = 0;                  // inverse targets clamped past 1e-9
  };

  // Evaluator that also reports round-trip diagnostics into `sink` (owned by
  // the caller, one per evaluation thread).
  std::unique_ptr<StepEvaluator> make_evaluator(Diagnostics* sink) const;

  double eta() const { return eta_; }

 private:
  ModelPtr base_;
  UtilityMatrix U_;
  int L_;
  int Lp_;
  int T_;
  double alpha_;
  double eta_;  // 1/sqrt(Delta)
  ContextMode mode_;
  std::shared_ptr<const RobustModel> fallback_;
};

struct RestartRegretStats {
  RegretStats regret;
  BoundedRobustModel::Diagnostics diagnostics;
};

// Mean external regret of QBR(model, 1/sqrt(Delta)) over adversary
// trajectories, plus the inverse-QBR diagnostics accumulated along the way.
RestartRegretStats restart_regret_eval(const BoundedRobustModel& model,
                                       const AdversaryFactory& adv, int T, int trials,
                                       std::uint64_t seed, ExecMode mode = ExecMode::kParallel);

}  // namespace lowregret

#endif  // LOWREGRET_BOUNDED_HPP_
