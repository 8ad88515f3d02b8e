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

#ifndef LOWREGRET_REGRET_HPP_
#define LOWREGRET_REGRET_HPP_

#include <vector>

#include "lowregret/core.hpp"
#include "lowregret/decision.hpp"

namespace lowregret {

using PolicyTrace = std::vector<MixedAction>;

// Average external regret of a mixed-action trace against a state sequence:
//   max_a (1/t) sum_s [U(a, theta_s) - U(pi_s, theta_s)].
// Prefix regrets are normalized by the prefix length t, so the value is the
// per-round gap to the best fixed action in hindsight.
double external_regret(const PolicyTrace& trace, std::span<const State> states,
                       const UtilityMatrix& U);

// Switch condition margin: (ln|A|)/sqrt(T) + sqrt(8*(1+alpha)*ln(T)/s).
double switch_threshold(int T, int s, int num_actions, double alpha);

// Incremental bookkeeping for one growing state sequence. Tracks, in O(|A| +
// |States|) per round: cumulative utility of every fixed action, of the model
// policy fed through `update`, and of the urn policy QBR(counts-based
// predictor, hedge_eta) recomputed from the running state counts. Regret
// queries at round 0 return 0 by convention so scans can start uniformly at
// round 1. Single-owner mutable state: one ledger per simulation thread.
class RegretLedger {
 public:
  RegretLedger(UtilityMatrix U, int alphabet_size, double hedge_eta);

  // Urn-policy action for the upcoming round (before its state is observed).
  MixedAction hedge_action() const;

  void update(const MixedAction& pi_model, State s);

  double regret_model() const;  // regret of the updated policy trace
  double regret_hedge() const;  // regret of the urn QBR policy

  int rounds() const { return rounds_; }
  std::span<const long long> state_counts() const { return counts_; }

 private:
  double best_fixed() const;

  UtilityMatrix U_;
  double hedge_eta_;
  int rounds_ = 0;
  std::vector<double> cum_fixed_;
  double cum_model_ = 0.0;
  double cum_hedge_ = 0.0;
  std::vector<long long> counts_;
};

// Laplace-smoothed empirical distribution: (1 + count_s) / (|States| + t).
StateDist urn_from_counts(std::span<const long long> counts, long long total);

}  // namespace lowregret

#endif  // LOWREGRET_REGRET_HPP_
