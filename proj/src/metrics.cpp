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

#include "lowregret/metrics.hpp"

#include <cmath>

namespace lowregret {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct TvWalker {
  const PredictionModel& P;
  const PredictionModel& Q;
  int T;
  std::vector<State> prefix;
  double acc = 0.0;

  void walk(double logp, double logq) {
    if (static_cast<int>(prefix.size()) == T) {
      const double p = logp == kNegInf ? 0.0 : std::exp(logp);
      const double q = logq == kNegInf ? 0.0 : std::exp(logq);
      acc += std::abs(p - q);
      return;
    }
    const StateDist dp = logp == kNegInf ? StateDist::uniform(P.alphabet_size())
                                         : P.predict(prefix);
    const StateDist dq = logq == kNegInf ? StateDist::uniform(Q.alphabet_size())
                                         : Q.predict(prefix);
    for (State s = 0; s < P.alphabet_size(); ++s) {
      const double lp = logp == kNegInf || dp[s] <= 0.0 ? kNegInf : logp + std::log(dp[s]);
      const double lq = logq == kNegInf || dq[s] <= 0.0 ? kNegInf : logq + std::log(dq[s]);
      if (lp == kNegInf && lq == kNegInf) continue;
      prefix.push_back(s);
      walk(lp, lq);
      prefix.pop_back();
    }
  }
};

}  // namespace

TvEstimate tv_exact(const PredictionModel& P, const PredictionModel& Q, int T) {
  if (P.alphabet_size() != Q.alphabet_size())
    throw std::invalid_argument("models disagree on the alphabet");
  if (T < 1 || T > P.horizon() || T > Q.horizon())
    throw std::invalid_argument("bad enumeration horizon");
  const double leaves = std::pow(static_cast<double>(P.alphabet_size()), T);
  if (leaves > static_cast<double>(1 << 24))
    throw BudgetError("exact TV enumeration exceeds the 2^24 leaf budget");

  TvWalker walker{P, Q, T, {}, 0.0};
  walker.prefix.reserve(T);
  walker.walk(0.0, 0.0);
  return TvEstimate{0.5 * walker.acc, 0.0, TvEstimate::Method::kExact};
}

TvEstimate tv_mc(const PredictionModel& P, const PredictionModel& Q, int T, long n,
                 std::uint64_t seed, ExecMode mode) {
  if (P.alphabet_size() != Q.alphabet_size())
    throw std::invalid_argument("models disagree on the alphabet");
  if (n < 1) throw std::invalid_argument("sample count must be positive");

  std::vector<double> terms(n);
  indexed_for(n, mode, [&](long i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    auto eval = P.make_evaluator();
    std::vector<State> x;
    x.reserve(T);
    double llp = 0.0;
    for (int t = 0; t < T; ++t) {
      const StateDist dist = eval->predict();
      const State s = rng.categorical(dist.probs());
      if (dist[s] <= 0.0) throw std::logic_error("sampled a zero-probability state");
      llp += std::log(dist[s]);
      x.push_back(s);
      eval->append(s);
    }
    const double llq = log_likelihood(Q, x);
    const double ratio = llq == kNegInf ? 0.0 : std::exp(llq - llp);
    terms[i] = std::max(0.0, 1.0 - ratio);
  });

  double sum = 0.0;
  for (double v : terms) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : terms) ss += (v - mean) * (v - mean);
  const double ci = n > 1 ? 1.96 * std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n))
                          : 0.0;
  return TvEstimate{mean, ci, TvEstimate::Method::kMonteCarlo};
}

TvEstimate tv_next_token(const PredictionModel& M1, const PredictionModel& M2,
                         const PredictionModel& ref, int T, int n, std::uint64_t seed,
                         ExecMode mode) {
  if (M1.alphabet_size() != M2.alphabet_size() || M1.alphabet_size() != ref.alphabet_size())
    throw std::invalid_argument("models disagree on the alphabet");
  if (n < 1) throw std::invalid_argument("sample count must be positive");

  std::vector<double> terms(n);
  indexed_for(n, mode, [&](long i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    auto env = ref.make_evaluator();
    auto e1 = M1.make_evaluator();
    auto e2 = M2.make_evaluator();
    double total = 0.0;
    for (int t = 0; t < T; ++t) {
      const StateDist d1 = e1->predict();
      const StateDist d2 = e2->predict();
      double l1 = 0.0;
      for (int s = 0; s < d1.size(); ++s) l1 += std::abs(d1[s] - d2[s]);
      total += 0.5 * l1;
      const State s = rng.categorical(env->predict().probs());
      env->append(s);
      e1->append(s);
      e2->append(s);
    }
    terms[i] = total / T;
  });

  double sum = 0.0;
  for (double v : terms) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : terms) ss += (v - mean) * (v - mean);
  const double ci = n > 1 ? 1.96 * std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n))
                          : 0.0;
  return TvEstimate{mean, ci, TvEstimate::Method::kMonteCarlo};
}

}  // namespace lowregret
