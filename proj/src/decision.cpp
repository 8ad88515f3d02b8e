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

#include "lowregret/decision.hpp"

#include <algorithm>
#include <cmath>

namespace lowregret {

double action_utility(const UtilityMatrix& U, int action, const StateDist& mu) {
  if (mu.size() != U.num_states()) throw std::invalid_argument("state dimension mismatch");
  double u = 0.0;
  for (int s = 0; s < mu.size(); ++s) u += mu[s] * U(action, s);
  return u;
}

double expected_utility(const UtilityMatrix& U, const MixedAction& pi, const StateDist& mu) {
  if (pi.size() != U.num_actions()) throw std::invalid_argument("action dimension mismatch");
  double total = 0.0;
  for (int a = 0; a < pi.size(); ++a) {
    if (pi[a] == 0.0) continue;
    total += pi[a] * action_utility(U, a, mu);
  }
  return total;
}

int best_response(const UtilityMatrix& U, const StateDist& mu) {
  int best = 0;
  double best_u = action_utility(U, 0, mu);
  for (int a = 1; a < U.num_actions(); ++a) {
    const double u = action_utility(U, a, mu);
    if (u > best_u) {
      best_u = u;
      best = a;
    }
  }
  return best;
}

MixedAction quantal_best_response(const UtilityMatrix& U, const StateDist& mu, double eta) {
  if (eta < kMinTemperature) throw std::invalid_argument("temperature too small");
  const int k = U.num_actions();
  std::vector<double> u(k);
  for (int a = 0; a < k; ++a) u[a] = action_utility(U, a, mu);
  const double m = *std::max_element(u.begin(), u.end());
  double z = 0.0;
  std::vector<double> w(k);
  for (int a = 0; a < k; ++a) {
    w[a] = std::exp((u[a] - m) / eta);
    z += w[a];
  }
  for (double& v : w) v /= z;
  return MixedAction(std::move(w));
}

InverseQbrResult inverse_qbr_binary(const UtilityMatrix& U, const MixedAction& target,
                                    double eta) {
  if (U.num_actions() != 2 || U.num_states() != 2)
    throw std::invalid_argument("inverse QBR requires binary actions and states");
  if (eta < kMinTemperature) throw std::invalid_argument("temperature too small");
  if (!(target[0] > 0.0 && target[1] > 0.0))
    throw std::invalid_argument("inverse QBR target must be interior");

  // With mu = (1-q, q): u1(q) - u0(q) = c0 + c1*q.
  const double c0 = U(1, 0) - U(0, 0);
  const double c1 = (U(1, 1) - U(0, 1)) - (U(1, 0) - U(0, 0));
  const double gap = eta * std::log(target[1] / target[0]);

  if (c1 == 0.0) {
    if (std::abs(c0 - gap) <= 1e-9) {
      // Every belief maps to the target; pick the symmetric one.
      return {StateDist::uniform(2), false, 0.0};
    }
    throw std::invalid_argument("degenerate utility: QBR target unattainable");
  }

  const double q = (gap - c0) / c1;
  double clamped_q = std::clamp(q, 0.0, 1.0);
  const double excess = std::abs(q - clamped_q);
  return {StateDist({1.0 - clamped_q, clamped_q}), excess > 1e-9, excess};
}

}  // namespace lowregret
