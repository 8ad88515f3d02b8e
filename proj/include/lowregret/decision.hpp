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

#ifndef LOWREGRET_DECISION_HPP_
#define LOWREGRET_DECISION_HPP_

#include <cmath>

#include "lowregret/core.hpp"

namespace lowregret {

// Softmax temperatures below this are rejected rather than allowed to turn
// into NaN-producing point masses.
inline constexpr double kMinTemperature = 1e-12;

inline double auto_temperature(int T) { return 1.0 / std::sqrt(static_cast<double>(T)); }

// E_{a~pi, s~mu} U(a, s).
double expected_utility(const UtilityMatrix& U, const MixedAction& pi, const StateDist& mu);

// E_{s~mu} U(a, s) for a single action.
double action_utility(const UtilityMatrix& U, int action, const StateDist& mu);

// Action maximizing expected utility under mu; ties break to the lowest index.
int best_response(const UtilityMatrix& U, const StateDist& mu);

// Softmax over action utilities at temperature eta, computed in log domain
// with max subtraction. eta -> 0 approaches best_response, eta -> infinity
// approaches uniform.
MixedAction quantal_best_response(const UtilityMatrix& U, const StateDist& mu, double eta);

struct InverseQbrResult {
  StateDist mu;
  bool clamped;          // target unreachable without leaving Delta(states)
  double clamp_excess;   // how far outside [0, 1] the unclamped solution fell
};

// Binary-action, binary-state inverse of quantal_best_response: finds mu with
// QBR(U, mu, eta) == target by solving the scalar linear equation
// u1(q) - u0(q) = eta * ln(target[1]/target[0]) in q = mu[1]. Out-of-range
// solutions are clamped and flagged; a utility with u1 - u0 constant in q and
// unequal to the required gap has no solution at all.
InverseQbrResult inverse_qbr_binary(const UtilityMatrix& U, const MixedAction& target,
                                    double eta);

}  // namespace lowregret

#endif  // LOWREGRET_DECISION_HPP_
