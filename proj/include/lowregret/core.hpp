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

#ifndef LOWREGRET_CORE_HPP_
#define LOWREGRET_CORE_HPP_

#include <cassert>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowregret/rng.hpp"

namespace lowregret {

// States and actions are dense 0-based indices; hot loops index tables with
// them and any naming lives in the CLI layer.
using State = int;

struct StateAlphabet {
  int size;
  explicit StateAlphabet(int n) : size(n) {
    if (n < 2) throw std::invalid_argument("state alphabet needs at least 2 states");
  }
};

struct ActionSet {
  int size;
  explicit ActionSet(int n) : size(n) {
    if (n < 2) throw std::invalid_argument("action set needs at least 2 actions");
  }
};

namespace detail {
// Shared probability-vector validator. Entries must be nonnegative and sum
// to 1 within 1e-12; sum drift between 1e-12 and 1e-9 is treated as
// accumulated rounding and renormalized away, anything larger is a contract
// violation. Tiny negative dips clamp to zero.
void validate_probs(std::vector<double>& p);
}  // namespace detail

// A validated probability vector. The tag keeps distributions over states
// and mixed actions from being interchanged silently.
template <typename Tag>
class ProbVec {
 public:
  explicit ProbVec(std::vector<double> probs) : p_(std::move(probs)) {
    detail::validate_probs(p_);
  }

  static ProbVec point(int index, int size) {
    std::vector<double> p(size, 0.0);
    p.at(index) = 1.0;
    return ProbVec(std::move(p));
  }

  static ProbVec uniform(int size) {
    return ProbVec(std::vector<double>(size, 1.0 / size));
  }

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  std::span<const double> probs() const { return p_; }

  void debug_validate() const {
#ifndef NDEBUG
    double sum = 0.0;
    for (double v : p_) {
      assert(v >= 0.0);
      sum += v;
    }
    assert(sum > 1.0 - 1e-9 && sum < 1.0 + 1e-9);
#endif
  }

 private:
  std::vector<double> p_;
};

using StateDist = ProbVec<struct StateDistTag>;    // element of Delta(states)
using MixedAction = ProbVec<struct MixedActionTag>;  // element of Delta(actions)

// Payoff table over (action, state) pairs, entries in [-1, 1], row-major.
class UtilityMatrix {
 public:
  UtilityMatrix(int num_actions, int num_states, std::vector<double> values);

  // The matching game: one point for predicting the state, zero otherwise.
  static UtilityMatrix match(int n);

  double operator()(int action, State state) const {
    return values_[static_cast<std::size_t>(action) * num_states_ + state];
  }
  int num_actions() const { return num_actions_; }
  int num_states() const { return num_states_; }

 private:
  int num_actions_;
  int num_states_;
  std::vector<double> values_;
};

// A (possibly partial) state sequence against a fixed horizon.
struct StateSeq {
  std::vector<State> states;
  int horizon;

  StateSeq(std::vector<State> s, int T) : states(std::move(s)), horizon(T) {
    if (T < 1) throw std::invalid_argument("horizon must be positive");
    if (static_cast<int>(states.size()) > T)
      throw std::invalid_argument("sequence longer than its horizon");
  }

  int size() const { return static_cast<int>(states.size()); }
  std::span<const State> view() const { return states; }
};

inline constexpr int kUnlimitedHorizon = std::numeric_limits<int>::max();

// Incremental cursor over one growing sequence. `predict` returns the
// model's distribution for the next state given everything appended so far.
// Wrappers with per-prefix work (regret scans, grid sums) override this to
// carry their state forward in O(1) amortized per step; outputs must match
// the pure predict(prefix) path bit for bit.
class StepEvaluator {
 public:
  virtual ~StepEvaluator() = default;
  virtual StateDist predict() = 0;
  virtual void append(State s) = 0;
  virtual int position() const = 0;
};

// A next-token prediction model: a pure function from prefixes to
// distributions over the next state. Models are immutable once built and
// safe to share across threads; per-sequence scratch lives in evaluators.
class PredictionModel {
 public:
  virtual ~PredictionModel() = default;

  virtual StateDist predict(std::span<const State> prefix) const = 0;
  virtual int alphabet_size() const = 0;
  virtual int horizon() const { return kUnlimitedHorizon; }
  // Context window w: predictions for prefixes of length >= w depend only on
  // the trailing w states. nullopt means unbounded context.
  virtual std::optional<int> context_bound() const { return std::nullopt; }

  virtual std::unique_ptr<StepEvaluator> make_evaluator() const;
};

using ModelPtr = std::shared_ptr<const PredictionModel>;

// Autoregressive sampling: theta_t ~ model(theta^{t-1}) for t = 1..T.
StateSeq sample_sequence(const PredictionModel& model, int T, Rng& rng);
StateSeq sample_sequence(const PredictionModel& model, int T, std::uint64_t seed);

// Sum over steps of log model(theta_t | theta^{t-1}); natural log, and
// -infinity when some step has zero mass.
double log_likelihood(const PredictionModel& model, std::span<const State> seq);
inline double log_likelihood(const PredictionModel& model, const StateSeq& seq) {
  return log_likelihood(model, seq.view());
}

}  // namespace lowregret

#endif  // LOWREGRET_CORE_HPP_
