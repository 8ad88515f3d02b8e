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

#ifndef LOWREGRET_ROBUSTIFY_HPP_
#define LOWREGRET_ROBUSTIFY_HPP_

#include "lowregret/core.hpp"
#include "lowregret/regret.hpp"

namespace lowregret {

struct SwitchReport {
  std::optional<int> tau;  // first round where the switch condition fires
  double gap = 0.0;        // regret difference observed at tau
  double threshold = 0.0;  // switch_threshold value at tau
};

// One-way robustification wrapper. For a prefix theta^{t-1} the prediction
// scans s = 1..t-1 comparing the regret of QBR(base, 1/sqrt(T)) against the
// regret of the urn policy; once
//   Regret_s >= Regret_urn,s + switch_threshold(T, s, |A|, alpha)
// holds anywhere along the prefix (ties fire), the output is the urn
// prediction on the full prefix, otherwise the base prediction. The scan is
// a pure function of the prefix; the evaluator carries it incrementally in
// O(|A| + |States|) per round and agrees with the per-call rescan bit for
// bit.
class RobustModel final : public PredictionModel {
 public:
  RobustModel(ModelPtr base, UtilityMatrix U, int T, double alpha);

  StateDist predict(std::span<const State> prefix) const override;
  int alphabet_size() const override { return base_->alphabet_size(); }
  int horizon() const override { return T_; }
  std::unique_ptr<StepEvaluator> make_evaluator() const override;

  // Literal per-call transcription of the scan: recomputes both regrets from
  // scratch at every s. O(t^2); kept as the oracle the fast path is tested
  // against.
  StateDist predict_rescan(std::span<const State> prefix) const;

  // Minimal s at which the condition holds along seq, if any.
  SwitchReport switch_time(std::span<const State> seq) const;

  const PredictionModel& base() const { return *base_; }
  const UtilityMatrix& utility() const { return U_; }
  double alpha() const { return alpha_; }
  double eta() const { return eta_; }

 private:
  ModelPtr base_;
  UtilityMatrix U_;
  int T_;
  double alpha_;
  double eta_;
};

}  // namespace lowregret

#endif  // LOWREGRET_ROBUSTIFY_HPP_
