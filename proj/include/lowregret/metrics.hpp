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

#ifndef LOWREGRET_METRICS_HPP_
#define LOWREGRET_METRICS_HPP_

#include "lowregret/core.hpp"
#include "lowregret/parallel.hpp"

namespace lowregret {

// Raised when an exact enumeration would exceed its leaf budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TvEstimate {
  enum class Method { kExact, kMonteCarlo };
  double value = 0.0;
  double ci95 = 0.0;  // 0 for exact values
  Method method = Method::kExact;
};

// Exact total variation distance between the length-T sequence distributions
// of two models: (1/2) * sum over sequences |P(x) - Q(x)|, via a depth-first
// prefix tree with log-space probabilities that prunes branches where both
// models have zero mass. Requires |States|^T <= 2^24.
TvEstimate tv_exact(const PredictionModel& P, const PredictionModel& Q, int T);

// Unbiased one-sided likelihood-ratio estimator of the same distance:
// mean over x ~ P of max(0, 1 - Q(x)/P(x)), with a normal-approximation CI.
TvEstimate tv_mc(const PredictionModel& P, const PredictionModel& Q, int T, long n,
                 std::uint64_t seed, ExecMode mode = ExecMode::kParallel);

// Next-token distance: mean over reference sequences of the per-prefix
// prediction TV, (1/T) * sum_{s=0}^{T-1} d_TV(M1(.|theta^s), M2(.|theta^s)),
// with the per-prefix distance computed exactly from the two predictions.
TvEstimate tv_next_token(const PredictionModel& M1, const PredictionModel& M2,
                         const PredictionModel& ref, int T, int n, std::uint64_t seed,
                         ExecMode mode = ExecMode::kParallel);

}  // namespace lowregret

#endif  // LOWREGRET_METRICS_HPP_
