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

#include "lowregret/robustify.hpp"

#include "lowregret/models.hpp"

namespace lowregret {

RobustModel::RobustModel(ModelPtr base, UtilityMatrix U, int T, double alpha)
    : base_(std::move(base)),
      U_(std::move(U)),
      T_(T),
      alpha_(alpha),
      eta_(auto_temperature(T)) {
  if (!base_) throw std::invalid_argument("robust model needs a base model");
  if (T < 1) throw std::invalid_argument("horizon must be positive");
  if (T > base_->horizon()) throw std::invalid_argument("horizon exceeds the base model's");
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (U_.num_states() != base_->alphabet_size())
    throw std::invalid_argument("utility matrix does not match the base alphabet");
}

namespace {

// Shared scan state: ledger of the base-QBR policy vs the urn policy plus the
// one-way switch flag.
class RobustEvaluator final : public StepEvaluator {
 public:
  RobustEvaluator(const RobustModel& model)
      : model_(model),
        base_eval_(model.base().make_evaluator()),
        ledger_(model.utility(), model.base().alphabet_size(), model.eta()),
        counts_(model.base().alphabet_size(), 0) {}

  StateDist predict() override {
    if (switched_) return urn_from_counts(counts_, n_);
    return base_eval_->predict();
  }

  void append(State s) override {
    if (n_ >= model_.horizon())
      throw std::invalid_argument("sequence longer than the model horizon");
    if (!switched_) {
      const MixedAction pi =
          quantal_best_response(model_.utility(), base_eval_->predict(), model_.eta());
      ledger_.update(pi, s);
      const int round = ledger_.rounds();
      const double gap = ledger_.regret_model() - ledger_.regret_hedge();
      const double thr = switch_threshold(model_.horizon(), round,
                                          model_.utility().num_actions(), model_.alpha());
      if (gap >= thr) {
        switched_ = true;
        report_ = SwitchReport{round, gap, thr};
      } else {
        base_eval_->append(s);
      }
    }
    ++counts_[s];
    ++n_;
  }

  int position() const override { return static_cast<int>(n_); }

  const SwitchReport& report() const { return report_; }

 private:
  const RobustModel& model_;
  std::unique_ptr<StepEvaluator> base_eval_;
  RegretLedger ledger_;
  std::vector<long long> counts_;
  long long n_ = 0;
  bool switched_ = false;
  SwitchReport report_;
};

}  // namespace

std::unique_ptr<StepEvaluator> RobustModel::make_evaluator() const {
  return std::make_unique<RobustEvaluator>(*this);
}

StateDist RobustModel::predict(std::span<const State> prefix) const {
  if (static_cast<int>(prefix.size()) >= T_)
    throw std::invalid_argument("prefix reached the model horizon");
  RobustEvaluator eval(*this);
  for (State s : prefix) eval.append(s);
  return eval.predict();
}

StateDist RobustModel::predict_rescan(std::span<const State> prefix) const {
  if (static_cast<int>(prefix.size()) >= T_)
    throw std::invalid_argument("prefix reached the model horizon");
  const int t = static_cast<int>(prefix.size());
  PolicyTrace base_trace;
  PolicyTrace urn_trace;
  base_trace.reserve(t);
  urn_trace.reserve(t);
  for (int s = 1; s <= t; ++s) {
    const auto seen = prefix.first(s - 1);
    base_trace.push_back(quantal_best_response(U_, base_->predict(seen), eta_));
    urn_trace.push_back(
        quantal_best_response(U_, polya_predict(seen, U_.num_states()), eta_));
    const auto played = prefix.first(s);
    const double regret = external_regret(base_trace, played, U_);
    const double regret_urn = external_regret(urn_trace, played, U_);
    if (regret - regret_urn >= switch_threshold(T_, s, U_.num_actions(), alpha_))
      return polya_predict(prefix, U_.num_states());
  }
  return base_->predict(prefix);
}

SwitchReport RobustModel::switch_time(std::span<const State> seq) const {
  if (static_cast<int>(seq.size()) > T_)
    throw std::invalid_argument("sequence longer than the model horizon");
  RobustEvaluator eval(*this);
  for (State s : seq) {
    eval.append(s);
    if (eval.report().tau) break;
  }
  return eval.report();
}

}  // namespace lowregret
