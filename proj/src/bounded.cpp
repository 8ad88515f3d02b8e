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

#include "lowregret/bounded.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

#include "lowregret/models.hpp"

namespace lowregret {

BoundedRobustModel::BoundedRobustModel(ModelPtr base, UtilityMatrix U, int L, int Lp, int T,
                                       double alpha, ContextMode mode)
    : base_(std::move(base)),
      U_(std::move(U)),
      L_(L),
      Lp_(Lp),
      T_(T),
      alpha_(alpha),
      eta_(auto_temperature(Lp - L)),
      mode_(mode) {
  if (!base_) throw std::invalid_argument("bounded robustification needs a base model");
  if (U_.num_actions() != 2 || U_.num_states() != 2 || base_->alphabet_size() != 2)
    throw std::invalid_argument("bounded robustification supports only binary actions/states");
  if (L < 1 || Lp <= L) throw std::invalid_argument("need window sizes 1 <= L < L'");
  if (T < Lp) throw std::invalid_argument("horizon must cover the widened window");
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  const auto base_window = base_->context_bound();
  if (base_window && *base_window > L)
    throw std::invalid_argument("base model context exceeds the declared L");
  fallback_ = std::make_shared<RobustModel>(base_, U_, T_, alpha_);
}

double BoundedRobustModel::copy_threshold(int s) const {
  const double d = static_cast<double>(delta());
  return std::log(2.0) / std::sqrt(d) +
         std::sqrt(8.0 * (std::log(static_cast<double>(T_)) + (1.0 + alpha_) * std::log(d)) /
                   static_cast<double>(s));
}

namespace {

// One restarted scan: ledger and urn counts over the copy's own span.
struct RestartCopy {
  long start;  // index of the copy's first observation
  RegretLedger ledger;
  std::array<long long, 2> counts{0, 0};
  long long seen = 0;
  bool switched = false;

  RestartCopy(long start_index, const UtilityMatrix& U, double eta)
      : start(start_index), ledger(U, 2, eta) {}
};

class BoundedEvaluator final : public StepEvaluator {
 public:
  BoundedEvaluator(const BoundedRobustModel& model, BoundedRobustModel::Diagnostics* sink)
      : model_(model), sink_(sink), fallback_eval_(model.fallback().make_evaluator()) {}

  void append(State s) override {
    const long i = static_cast<long>(seq_.size());
    if (i >= model_.horizon())
      throw std::invalid_argument("sequence longer than the model horizon");

    // The fallback handles predictions while the prefix is shorter than L';
    // past that point it never runs again.
    if (i < model_.Lp()) fallback_eval_->append(s);

    copies_.emplace_back(i, model_.utility(), model_.eta());

    std::optional<StateDist> shared_base;
    if (model_.mode() == ContextMode::kFullContext) shared_base = base_prediction(i);
    for (RestartCopy& copy : copies_) {
      if (!copy.switched) {
        const StateDist& belief = model_.mode() == ContextMode::kFullContext
                                      ? *shared_base
                                      : suffix_base_prediction(copy.start, i);
        const MixedAction pi = quantal_best_response(model_.utility(), belief, model_.eta());
        copy.ledger.update(pi, s);
        const int round = copy.ledger.rounds();
        if (copy.ledger.regret_model() - copy.ledger.regret_hedge() >=
            model_.copy_threshold(round)) {
          copy.switched = true;
        }
      }
      ++copy.counts[s];
      ++copy.seen;
    }
    seq_.push_back(s);
    while (!copies_.empty() && copies_.front().start < static_cast<long>(seq_.size()) -
                                                            static_cast<long>(model_.delta()))
      copies_.pop_front();
  }

  StateDist predict() override {
    const long n = static_cast<long>(seq_.size());
    if (n < model_.Lp()) return fallback_eval_->predict();

    const int delta = model_.delta();
    std::optional<StateDist> shared_base;
    if (model_.mode() == ContextMode::kFullContext) shared_base = base_prediction(n);
    std::vector<double> avg(2, 0.0);
    for (const RestartCopy& copy : copies_) {
      StateDist mu_m = copy.switched
                           ? urn_from_counts(copy.counts, copy.seen)
                           : (model_.mode() == ContextMode::kFullContext
                                  ? *shared_base
                                  : suffix_base_prediction(copy.start, n));
      const MixedAction pi = quantal_best_response(model_.utility(), mu_m, model_.eta());
      for (int a = 0; a < 2; ++a) avg[a] += pi[a];
    }
    for (double& v : avg) v /= delta;
    MixedAction target(avg);
    const InverseQbrResult inverse =
        inverse_qbr_binary(model_.utility(), target, model_.eta());
    if (sink_) {
      const MixedAction back = quantal_best_response(model_.utility(), inverse.mu, model_.eta());
      double err = 0.0;
      for (int a = 0; a < 2; ++a) err = std::max(err, std::abs(back[a] - target[a]));
      sink_->max_roundtrip_error = std::max(sink_->max_roundtrip_error, err);
      if (inverse.clamped) ++sink_->clamped;
    }
    return inverse.mu;
  }

  int position() const override { return static_cast<int>(seq_.size()); }

 private:
  // Base prediction for position i given its real context (last L tokens).
  StateDist base_prediction(long i) const {
    const long from = std::max<long>(0, i - model_.L());
    return model_.base().predict(
        std::span<const State>(seq_).subspan(from, i - from));
  }

  // Base prediction for position i seeing only the copy's own suffix.
  StateDist suffix_base_prediction(long start, long i) const {
    return model_.base().predict(
        std::span<const State>(seq_).subspan(start, i - start));
  }

  const BoundedRobustModel& model_;
  BoundedRobustModel::Diagnostics* sink_;
  std::unique_ptr<StepEvaluator> fallback_eval_;
  std::vector<State> seq_;
  std::deque<RestartCopy> copies_;
};

}  // namespace

std::unique_ptr<StepEvaluator> BoundedRobustModel::make_evaluator() const {
  return std::make_unique<BoundedEvaluator>(*this, nullptr);
}

std::unique_ptr<StepEvaluator> BoundedRobustModel::make_evaluator(Diagnostics* sink) const {
  return std::make_unique<BoundedEvaluator>(*this, sink);
}

StateDist BoundedRobustModel::predict(std::span<const State> prefix) const {
  if (static_cast<int>(prefix.size()) >= T_)
    throw std::invalid_argument("prefix reached the model horizon");
  BoundedEvaluator eval(*this, nullptr);
  for (State s : prefix) eval.append(s);
  return eval.predict();
}

RestartRegretStats restart_regret_eval(const BoundedRobustModel& model,
                                       const AdversaryFactory& adv, int T, int trials,
                                       std::uint64_t seed, ExecMode mode) {
  if (T < model.Lp()) throw std::invalid_argument("T must be at least L'");
  if (T > model.horizon()) throw std::invalid_argument("T exceeds the model horizon");
  const UtilityMatrix& U = model.utility();
  const double eta = model.eta();

  std::vector<double> regrets(trials);
  std::vector<BoundedRobustModel::Diagnostics> diags(trials);
  indexed_for(trials, mode, [&](long i) {
    const std::uint64_t trial_seed = Rng::mix64(seed ^ Rng::mix64(i + 1));
    auto eval = model.make_evaluator(&diags[i]);
    auto opponent = adv.create(Rng(trial_seed));
    PolicyTrace trace;
    trace.reserve(T);
    std::vector<State> states;
    states.reserve(T);
    for (int t = 0; t < T; ++t) {
      MixedAction pi = quantal_best_response(U, eval->predict(), eta);
      const State s = opponent->next_state(pi, states);
      trace.push_back(std::move(pi));
      states.push_back(s);
      eval->append(s);
    }
    regrets[i] = external_regret(trace, states, U);
  });

  RestartRegretStats out;
  double sum = 0.0;
  for (double v : regrets) sum += v;
  out.regret.trials = trials;
  out.regret.mean = sum / trials;
  if (trials > 1) {
    double ss = 0.0;
    for (double v : regrets) ss += (v - out.regret.mean) * (v - out.regret.mean);
    out.regret.ci95 =
        1.96 * std::sqrt(ss / (trials - 1)) / std::sqrt(static_cast<double>(trials));
  }
  for (const auto& d : diags) {
    out.diagnostics.max_roundtrip_error =
        std::max(out.diagnostics.max_roundtrip_error, d.max_roundtrip_error);
    out.diagnostics.clamped += d.clamped;
  }
  return out;
}

}  // namespace lowregret
