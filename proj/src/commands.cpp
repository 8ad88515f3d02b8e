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

#include "lowregret/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "lowregret/dataset.hpp"
#include "lowregret/metrics.hpp"
#include "lowregret/models.hpp"
#include "lowregret/robustify.hpp"
#include "lowregret/vswitch.hpp"

namespace lowregret {

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

struct TrialRow {
  double regret = 0.0;
  bool switched = false;
  int switch_round = 0;
};

}  // namespace

std::string cmd_simulate(const ExperimentConfig& config, ExecMode mode) {
  const ModelPtr model = parse_model(config.model, config.horizon, config.alpha);
  const auto adversary = parse_adversary(config.adversary, config.horizon, config.alpha);
  const UtilityMatrix U = UtilityMatrix::match(model->alphabet_size());
  const double eta = config.resolved_eta();
  const int T = config.horizon;

  const auto* robust = dynamic_cast<const RobustModel*>(model.get());
  const auto* vswitch = dynamic_cast<const VSwitchModel*>(model.get());

  std::vector<TrialRow> rows(config.trials);
  std::vector<std::uint64_t> seeds(config.trials);
  indexed_for(config.trials, mode, [&](long i) {
    seeds[i] = Rng::mix64(config.seed ^ Rng::mix64(i + 1));
    const InteractionResult res = run_interaction(*model, *adversary, U, eta, T, seeds[i]);
    TrialRow row;
    row.regret = res.regret;
    if (robust || vswitch) {
      const SwitchReport report = robust ? robust->switch_time(res.states.view())
                                         : vswitch->switch_time(res.states.view());
      row.switched = report.tau.has_value();
      row.switch_round = report.tau.value_or(0);
    }
    rows[i] = row;
  });

  std::ostringstream os;
  os << "trial,seed,model,adversary,T,regret,switched,switch_time\n";
  double sum = 0.0;
  double switch_count = 0.0;
  for (int i = 0; i < config.trials; ++i) {
    os << (i + 1) << "," << seeds[i] << "," << quoted(config.model) << ","
       << quoted(config.adversary) << "," << T << "," << fmt_fixed(rows[i].regret, 6) << ","
       << (rows[i].switched ? 1 : 0) << ","
       << (rows[i].switched ? std::to_string(rows[i].switch_round) : "na") << "\n";
    sum += rows[i].regret;
    switch_count += rows[i].switched ? 1.0 : 0.0;
  }
  const double mean = sum / config.trials;
  double ss = 0.0;
  for (const TrialRow& row : rows) ss += (row.regret - mean) * (row.regret - mean);
  const double ci = config.trials > 1
                        ? 1.96 * std::sqrt(ss / (config.trials - 1)) /
                              std::sqrt(static_cast<double>(config.trials))
                        : 0.0;
  os << "summary,na," << quoted(config.model) << "," << quoted(config.adversary) << "," << T
     << "," << fmt_fixed(mean, 6) << "," << fmt_fixed(switch_count / config.trials, 6) << ","
     << fmt_fixed(ci, 6) << "\n";
  return os.str();
}

std::string cmd_tv(const std::string& spec_p, const std::string& spec_q, int T,
                   const std::string& method, long samples, std::uint64_t seed, ExecMode mode) {
  const ModelPtr P = parse_model(spec_p, T);
  const ModelPtr Q = parse_model(spec_q, T);
  TvEstimate estimate;
  if (method == "exact") {
    estimate = tv_exact(*P, *Q, T);
  } else if (method == "mc") {
    estimate = tv_mc(*P, *Q, T, samples, seed, mode);
  } else {
    throw SpecParseError("method must be exact or mc", 0);
  }
  std::ostringstream os;
  os << "P,Q,T,method,value,ci\n";
  os << quoted(spec_p) << "," << quoted(spec_q) << "," << T << "," << method << ","
     << fmt_fixed(estimate.value, 6) << "," << fmt_fixed(estimate.ci95, 6) << "\n";
  return os.str();
}

DatasetCmdResult cmd_dataset(const ExperimentConfig& config, int n_base, int n_polya,
                             long max_draws, bool fixed_pool, ExecMode mode) {
  const ModelPtr base = parse_model(config.model, config.horizon, 1.0);
  const UtilityMatrix U = UtilityMatrix::match(base->alphabet_size());
  CorpusOptions opts;
  opts.alpha_mask = config.alpha;
  opts.n_base = n_base;
  opts.n_polya_target = n_polya;
  opts.T = config.horizon;
  opts.fixed_pool = fixed_pool;
  opts.max_draws = max_draws;
  const CorpusResult corpus = generate_corpus(*base, U, opts, config.seed, mode);
  return DatasetCmdResult{corpus_to_jsonl(corpus), corpus_stats_line(corpus, opts)};
}

std::string cmd_impossibility(int L, int trials, std::uint64_t seed, bool* all_above,
                              ExecMode mode) {
  const std::vector<ImpossibilityRow> rows = impossibility_suite(L, trials, seed, mode);
  bool ok = true;
  std::ostringstream os;
  os << "candidate,tv_lb,regret_vs_M1,sum\n";
  for (const ImpossibilityRow& row : rows) {
    os << row.candidate << "," << fmt_fixed(row.tv, 6) << "," << fmt_fixed(row.regret, 6) << ","
       << fmt_fixed(row.sum(), 6) << "\n";
    ok = ok && row.sum() >= 1.0 / 12.0;
  }
  if (all_above) *all_above = ok;
  return os.str();
}

namespace {

// Random utility matrix with entries in [-1, 1].
UtilityMatrix random_binary_utility(Rng& rng) {
  std::vector<double> v(4);
  for (double& x : v) x = 2.0 * rng.next_unit() - 1.0;
  return UtilityMatrix(2, 2, std::move(v));
}

double downstream_regret(const UtilityMatrix& U, int T, std::uint64_t seed) {
  auto base = std::make_shared<PiecewiseBernoulliModel>(
      std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {T / 2 + 1, 2.0 / 3.0}});
  const VSwitchModel model(base, VScoreParams::defaults(T), T);
  const FlipAdversaryFactory flip(U);
  return run_interaction(model, flip, U, auto_temperature(T), T, seed).regret;
}

}  // namespace

std::vector<CheckResult> vswitch_battery(std::uint64_t seed, int indist_trials, ExecMode mode) {
  std::vector<CheckResult> checks;

  // Properness and boundedness of the score family over a 0.01 grid.
  {
    double worst_properness = 0.0;  // how far E[loss at q] exceeds E[loss at p]
    double worst_bound = 0.0;
    for (int qi = 0; qi <= 100; ++qi) {
      const double q = qi / 100.0;
      for (int vi = 0; vi <= 100; ++vi) {
        const double v = vi / 100.0;
        const double at_truth = (1.0 - q) * v_score(v, q, 0) + q * v_score(v, q, 1);
        for (int pi = 0; pi <= 100; ++pi) {
          const double p = pi / 100.0;
          const double at_p = (1.0 - q) * v_score(v, p, 0) + q * v_score(v, p, 1);
          worst_properness = std::max(worst_properness, at_truth - at_p);
          worst_bound = std::max(worst_bound,
                                 std::max(std::abs(v_score(v, p, 0)), std::abs(v_score(v, p, 1))));
        }
      }
    }
    checks.push_back({"properness_grid", worst_properness <= 1e-12, worst_properness, 1e-12});
    checks.push_back({"loss_bounded", worst_bound <= 1.0, worst_bound, 1.0});
  }

  // Fast gap equals the reference scan.
  {
    double worst = 0.0;
    Rng rng = Rng::stream(seed, 1001);
    for (int i = 0; i < 100; ++i) {
      const int t = 64 + static_cast<int>(rng.next_u64() % 448);
      std::vector<double> forecasts(t);
      std::vector<State> outcomes(t);
      for (int s = 0; s < t; ++s) {
        forecasts[s] = rng.next_unit();
        outcomes[s] = rng.bernoulli(0.5) ? 1 : 0;
      }
      const double fast = v_gap(forecasts, outcomes, 1.0 / 128.0);
      const double slow = v_gap_naive(forecasts, outcomes, 1.0 / 128.0);
      worst = std::max(worst, std::abs(fast - slow));
    }
    checks.push_back({"gap_fast_matches_reference", worst <= 1e-12, worst, 1e-12});
  }

  // A constant forecaster on all-zero outcomes must trip the switch.
  {
    const int T = 2048;
    auto base = std::make_shared<ConstantModel>(StateDist({1.0 / 3.0, 2.0 / 3.0}));
    const VSwitchModel model(base, VScoreParams::defaults(T), T);
    const std::vector<State> zeros(T, 0);
    const SwitchReport report = model.switch_time(zeros);
    const bool urn_after = report.tau.has_value() &&
                           model.predict(std::span<const State>(zeros).first(*report.tau))[1] !=
                               base->predict({})[1];
    checks.push_back({"forced_switch_fires", report.tau.has_value() && urn_after,
                      static_cast<double>(report.tau.value_or(0)), static_cast<double>(T)});
  }

  // In-distribution draws switch with frequency <= 0.02 at c = 2.
  {
    const int T = 2048;
    auto base = std::make_shared<PiecewiseBernoulliModel>(
        std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {T / 2 + 1, 2.0 / 3.0}});
    VScoreParams params = VScoreParams::defaults(T);
    params.c = 2.0;
    const VSwitchModel model(base, params, T);
    std::vector<char> switched(indist_trials);
    indexed_for(indist_trials, mode, [&](long i) {
      Rng rng = Rng::stream(seed, 2000 + i);
      const StateSeq seq = sample_sequence(*base, T, rng);
      switched[i] = model.switch_time(seq.view()).tau.has_value() ? 1 : 0;
    });
    double freq = 0.0;
    for (char c : switched) freq += c;
    freq /= indist_trials;
    checks.push_back({"indist_switch_rate", freq <= 0.02, freq, 0.02});
  }

  // Downstream smooth best response: low regret against the flip adversary
  // for random utilities, improving with the horizon.
  {
    Rng rng = Rng::stream(seed, 3001);
    double worst_at_2048 = 0.0;
    bool decreasing = true;
    for (int i = 0; i < 5; ++i) {
      const UtilityMatrix U = random_binary_utility(rng);
      const double r_short = downstream_regret(U, 512, seed + 41 * i);
      const double r_long = downstream_regret(U, 2048, seed + 41 * i + 1);
      worst_at_2048 = std::max(worst_at_2048, r_long);
      decreasing = decreasing && r_long <= r_short;
    }
    checks.push_back({"downstream_regret_T2048", worst_at_2048 <= 0.15, worst_at_2048, 0.15});
    checks.push_back({"downstream_regret_decreasing", decreasing, decreasing ? 1.0 : 0.0, 1.0});
  }

  return checks;
}

std::string checks_to_csv(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  os << "check,pass,value,bound\n";
  for (const CheckResult& c : checks)
    os << c.name << "," << (c.pass ? 1 : 0) << "," << fmt_fixed(c.value, 6) << ","
       << fmt_fixed(c.bound, 6) << "\n";
  return os.str();
}

}  // namespace lowregret
