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

#include "lowregret/regret.hpp"

#include <algorithm>
#include <cmath>

namespace lowregret {

double external_regret(const PolicyTrace& trace, std::span<const State> states,
                       const UtilityMatrix& U) {
  const int t = static_cast<int>(states.size());
  if (t == 0 || trace.size() != states.size())
    throw std::invalid_argument("trace and state sequence must have equal positive length");

  // Accumulate per-action and policy utilities separately so prefix scans
  // reproduce the incremental ledger bit for bit.
  std::vector<double> fixed(U.num_actions(), 0.0);
  double policy = 0.0;
  for (int s = 0; s < t; ++s) {
    const State theta = states[s];
    for (int a = 0; a < U.num_actions(); ++a) fixed[a] += U(a, theta);
    const MixedAction& pi = trace[s];
    double u = 0.0;
    for (int a = 0; a < pi.size(); ++a) u += pi[a] * U(a, theta);
    policy += u;
  }
  const double best = *std::max_element(fixed.begin(), fixed.end());
  return (best - policy) / t;
}

double switch_threshold(int T, int s, int num_actions, double alpha) {
  if (s < 1 || s > T) throw std::invalid_argument("switch_threshold needs 1 <= s <= T");
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  const double rootT = std::sqrt(static_cast<double>(T));
  return std::log(static_cast<double>(num_actions)) / rootT +
         std::sqrt(8.0 * (1.0 + alpha) * std::log(static_cast<double>(T)) / s);
}

StateDist urn_from_counts(std::span<const long long> counts, long long total) {
  const int n = static_cast<int>(counts.size());
  std::vector<double> p(n);
  const double denom = static_cast<double>(n) + static_cast<double>(total);
  for (int s = 0; s < n; ++s) p[s] = (1.0 + static_cast<double>(counts[s])) / denom;
  return StateDist(std::move(p));
}

RegretLedger::RegretLedger(UtilityMatrix U, int alphabet_size, double hedge_eta)
    : U_(std::move(U)),
      hedge_eta_(hedge_eta),
      cum_fixed_(U_.num_actions(), 0.0),
      counts_(alphabet_size, 0) {
  if (U_.num_states() != alphabet_size)
    throw std::invalid_argument("ledger alphabet does not match the utility matrix");
}

MixedAction RegretLedger::hedge_action() const {
  return quantal_best_response(U_, urn_from_counts(counts_, rounds_), hedge_eta_);
}

void RegretLedger::update(const MixedAction& pi_model, State s) {
  if (s < 0 || s >= static_cast<int>(counts_.size()))
    throw std::invalid_argument("state out of range");
  const MixedAction pi_hedge = hedge_action();
  for (int a = 0; a < U_.num_actions(); ++a) cum_fixed_[a] += U_(a, s);
  double u_model = 0.0;
  double u_hedge = 0.0;
  for (int a = 0; a < U_.num_actions(); ++a) {
    u_model += pi_model[a] * U_(a, s);
    u_hedge += pi_hedge[a] * U_(a, s);
  }
  cum_model_ += u_model;
  cum_hedge_ += u_hedge;
  ++counts_[s];
  ++rounds_;
}

double RegretLedger::best_fixed() const {
  return *std::max_element(cum_fixed_.begin(), cum_fixed_.end());
}

double RegretLedger::regret_model() const {
  if (rounds_ == 0) return 0.0;
  return (best_fixed() - cum_model_) / rounds_;
}

double RegretLedger::regret_hedge() const {
  if (rounds_ == 0) return 0.0;
  return (best_fixed() - cum_hedge_) / rounds_;
}

}  // namespace lowregret
