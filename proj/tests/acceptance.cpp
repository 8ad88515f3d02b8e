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

// End-to-end acceptance battery. Each numbered criterion prints one
// [PASS]/[FAIL] line; the process exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "lowregret/bounded.hpp"
#include "lowregret/commands.hpp"
#include "lowregret/dataset.hpp"
#include "lowregret/metrics.hpp"
#include "lowregret/models.hpp"
#include "lowregret/robustify.hpp"
#include "lowregret/vswitch.hpp"

using namespace lowregret;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const UtilityMatrix kMatch = UtilityMatrix::match(2);

std::shared_ptr<PiecewiseBernoulliModel> half_bernoulli(int T) {
  return std::make_shared<PiecewiseBernoulliModel>(
      std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {T / 2 + 1, 2.0 / 3.0}});
}

std::string fmt(double v) { return fmt_fixed(v, 6); }

// --- C1: exact sequence-distance bound for the one-way switch wrapper ----

void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const int T = 10;
  auto base = std::make_shared<PiecewiseBernoulliModel>(
      std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {6, 2.0 / 3.0}});
  const RobustModel model(base, kMatch, T, 1.0);
  const TvEstimate tv = tv_exact(model, *base, T);
  const double elapsed = seconds_since(start);
  report("C1 exact-tv-bound", tv.value <= 0.2 && elapsed < 5.0,
         "tv=" + fmt(tv.value) + " bound=0.200000 time=" + fmt(elapsed) + "s");
}

// --- C2: simulated worst-case regret of the robustified model ------------

void criterion2() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  double prev_flip = std::numeric_limits<double>::infinity();
  double prev_zero = std::numeric_limits<double>::infinity();
  for (int T : {256, 1024, 4096}) {
    auto base = half_bernoulli(T);
    const RobustModel model(base, kMatch, T, 1.0);
    const double eta = auto_temperature(T);
    const double bound =
        3.0 * (std::log(2.0 * T) + std::sqrt(2.0 * std::log(static_cast<double>(T)))) /
        std::sqrt(static_cast<double>(T));
    const FlipAdversaryFactory flip(kMatch);
    const ConstAdversaryFactory zeros(0, 2);
    const RegretStats f = interaction_regret_stats(model, flip, kMatch, eta, T, 128, 7);
    const RegretStats z = interaction_regret_stats(model, zeros, kMatch, eta, T, 128, 7);
    pass = pass && f.mean <= bound && z.mean <= bound;
    pass = pass && f.ci95 <= 0.02 && z.ci95 <= 0.02;
    pass = pass && f.mean < prev_flip && z.mean < prev_zero;
    prev_flip = f.mean;
    prev_zero = z.mean;
    detail += "T=" + std::to_string(T) + ":flip=" + fmt(f.mean) + ",const0=" + fmt(z.mean) +
              ",bound=" + fmt(bound) + " ";
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 60.0;
  report("C2 robust-regret-decay", pass, detail + "time=" + fmt(elapsed) + "s");
}

// --- C3: urn policy replicates multiplicative-weights behavior -----------

void criterion3() {
  const int T = 1024;
  const PolyaUrnModel urn(2);
  const FlipAdversaryFactory flip(kMatch);
  const double regret = run_interaction(urn, flip, kMatch, auto_temperature(T), T, 7).regret;
  const double bound = 3.0 * (std::log(static_cast<double>(T)) + std::log(2.0)) /
                       std::sqrt(static_cast<double>(T));
  // 0.018853 is the value measured on the first run of this deterministic
  // interaction; the tolerance absorbs toolchain-level rounding drift only.
  const bool pass = regret <= bound && regret <= 0.3 && std::abs(regret - 0.018853) <= 0.01;
  report("C3 urn-policy-regret", pass,
         "regret=" + fmt(regret) + " bound=" + fmt(bound) + " pinned=0.018853");
}

// --- C4: in-distribution behavior is preserved ---------------------------

void criterion4() {
  const int T = 1024;
  auto base = half_bernoulli(T);
  const RobustModel model(base, kMatch, T, 1.0);
  const int trials = 1000;
  std::vector<char> switched(trials);
  std::vector<double> br_regret(trials);
  indexed_for(trials, ExecMode::kParallel, [&](long i) {
    Rng rng = Rng::stream(404, i);
    const StateSeq seq = sample_sequence(*base, T, rng);
    switched[i] = model.switch_time(seq.view()).tau.has_value() ? 1 : 0;
    PolicyTrace trace;
    trace.reserve(T);
    auto eval = base->make_evaluator();
    for (State s : seq.states) {
      trace.push_back(MixedAction::point(best_response(kMatch, eval->predict()), 2));
      eval->append(s);
    }
    br_regret[i] = external_regret(trace, seq.view(), kMatch);
  });
  double freq = 0.0;
  double mean_regret = 0.0;
  for (int i = 0; i < trials; ++i) {
    freq += switched[i];
    mean_regret += br_regret[i];
  }
  freq /= trials;
  mean_regret /= trials;
  const bool pass = freq <= 0.01 && mean_regret <= 0.01;
  report("C4 in-distribution-preserved", pass,
         "switch_freq=" + fmt(freq) + " br_regret=" + fmt(mean_regret));
}

// --- C5: the in-distribution regret landmark through the CLI path --------

void criterion5() {
  ExperimentConfig config;
  config.model = "robust(bernoulli(1/3@1,2/3@513),alpha=1)";
  config.adversary = "env(bernoulli(1/3@1,2/3@513))";
  config.horizon = 1024;
  config.trials = 128;
  config.seed = 12345;
  const std::string csv = cmd_simulate(config);
  // Summary row: summary,na,model,adversary,T,<mean>,...
  const auto at = csv.find("summary,na,");
  double mean = std::numeric_limits<double>::quiet_NaN();
  if (at != std::string::npos) {
    const std::size_t field = csv.find(",1024,", at);
    if (field != std::string::npos) mean = std::atof(csv.c_str() + field + 6);
  }
  const bool pass = std::abs(mean - (-1.0 / 6.0)) <= 0.02;
  report("C5 in-distribution-landmark", pass,
         "mean=" + fmt(mean) + " target=" + fmt(-1.0 / 6.0) + " tol=0.02");
}

// --- C6: widened-window robustification ----------------------------------

void criterion6() {
  const int T = 1024;
  const int L = 8;
  const int Lp = 72;
  auto base = std::make_shared<DeBruijnModel>(L, false, 0.0);
  const BoundedRobustModel model(base, kMatch, L, Lp, T, 1.0);
  const double d = Lp - L;
  const double bound =
      (1.0 + d / T) *
      ((std::sqrt(2.0) + 1.0) / d +
       std::sqrt((8.0 * std::log(static_cast<double>(T)) + 16.0 * std::log(d)) / d));
  const FlipAdversaryFactory flip(kMatch);
  const ConstAdversaryFactory zeros(0, 2);
  const RestartRegretStats f = restart_regret_eval(model, flip, T, 8, 5);
  const RestartRegretStats z = restart_regret_eval(model, zeros, T, 8, 5);
  const double roundtrip =
      std::max(f.diagnostics.max_roundtrip_error, z.diagnostics.max_roundtrip_error);

  auto tiny_base = std::make_shared<WindowedModel>(std::make_shared<PolyaUrnModel>(2), 4);
  const BoundedRobustModel tiny(tiny_base, kMatch, 4, 8, 12, 2.0);
  const TvEstimate tv = tv_exact(tiny, *tiny_base, 12);

  const bool pass = f.regret.mean <= bound && z.regret.mean <= bound && roundtrip <= 1e-9 &&
                    tv.value <= 1.0 / 16.0;
  report("C6 widened-window", pass,
         "flip=" + fmt(f.regret.mean) + " const0=" + fmt(z.regret.mean) + " bound=" +
             fmt(bound) + " roundtrip=" + fmt_fixed(roundtrip, 12) + " tiny_tv=" +
             fmt_fixed(tv.value, 12) + " tiny_bound=" + fmt(1.0 / 16.0));
}

// --- C7: bounded-context tradeoff ----------------------------------------

void criterion7() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (const ImpossibilityRow& row : impossibility_suite(8, 128, 77)) {
    pass = pass && row.sum() >= 1.0 / 12.0 && row.regret_ci <= 0.02;
    detail += row.candidate + "=" + fmt(row.sum()) + " ";
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 30.0;
  report("C7 tradeoff-suite", pass, detail + ">=0.083333 time=" + fmt(elapsed) + "s");
}

// --- C8: V-score switching battery ---------------------------------------

void criterion8() {
  bool pass = true;
  std::string detail;
  for (const CheckResult& c : vswitch_battery(4242, 1000)) {
    pass = pass && c.pass;
    detail += c.name + (c.pass ? "=ok " : "=FAIL ");
  }
  report("C8 vscore-battery", pass, detail);
}

// --- C9: oracle equivalences ----------------------------------------------

void criterion9() {
  bool ledger_ok = true;
  {
    const double eta = 1.0 / std::sqrt(200.0);
    for (int trial = 0; trial < 100 && ledger_ok; ++trial) {
      Rng rng = Rng::stream(31, trial);
      RegretLedger ledger(kMatch, 2, eta);
      PolicyTrace model_trace;
      PolicyTrace hedge_trace;
      std::vector<State> states;
      for (int s = 1; s <= 200; ++s) {
        const double p = rng.next_unit();
        const MixedAction pi({p, 1.0 - p});
        const State theta = rng.bernoulli(0.4) ? 1 : 0;
        hedge_trace.push_back(ledger.hedge_action());
        ledger.update(pi, theta);
        model_trace.push_back(pi);
        states.push_back(theta);
        ledger_ok = ledger_ok &&
                    std::abs(ledger.regret_model() -
                             external_regret(model_trace, states, kMatch)) <= 1e-12 &&
                    std::abs(ledger.regret_hedge() -
                             external_regret(hedge_trace, states, kMatch)) <= 1e-12;
      }
    }
  }

  bool tv_ok = true;
  {
    Rng rng(9);
    for (int rep = 0; rep < 20 && tv_ok; ++rep) {
      const int T = 2 + static_cast<int>(rng.next_u64() % 7);
      auto p = std::make_shared<PiecewiseBernoulliModel>(
          std::vector<std::pair<int, double>>{{1, 0.2 + 0.6 * rng.next_unit()}});
      std::shared_ptr<PredictionModel> q;
      if (rep % 2 == 0) {
        q = std::make_shared<PolyaUrnModel>(2);
      } else {
        q = std::make_shared<PeriodicDriftModel>(8.0 + 32.0 * rng.next_unit());
      }
      const TvEstimate exact = tv_exact(*p, *q, T);
      const TvEstimate mc = tv_mc(*p, *q, T, 100000, rng.next_u64());
      tv_ok = std::abs(mc.value - exact.value) <= 3.0 * (mc.ci95 / 1.96) + 1e-9;
    }
  }

  bool corpus_ok = true;
  {
    const int T = 256;
    auto base = half_bernoulli(T);
    CorpusOptions opts;
    opts.n_base = 0;
    opts.n_polya_target = 100;
    opts.T = T;
    const CorpusResult corpus = generate_corpus(*base, kMatch, opts, 2026);
    int verified = 0;
    for (const CorpusRecord& rec : corpus.records) {
      const double eta = auto_temperature(T);
      PolicyTrace trace;
      std::optional<int> first;
      for (int t = 1; t <= T && !first; ++t) {
        const std::span<const State> seen(rec.seq.data(), t - 1);
        trace.push_back(quantal_best_response(kMatch, base->predict(seen), eta));
        if (external_regret(trace, std::span<const State>(rec.seq.data(), t), kMatch) >
            opts.alpha_mask / std::sqrt(static_cast<double>(t)))
          first = t;
      }
      if (first && rec.mask_from && *first == *rec.mask_from) ++verified;
    }
    corpus_ok = corpus.polya_kept > 0 && verified == corpus.polya_kept;
  }

  bool debruijn_ok = true;
  for (int L = 1; L <= 16 && debruijn_ok; ++L) {
    const DeBruijnTable table(L);  // the constructor checks window uniqueness
    std::uint32_t w = 0;
    const std::uint32_t n = table.num_windows();
    std::vector<bool> seen(n, false);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (seen[w]) debruijn_ok = false;
      seen[w] = true;
      w = ((w << 1) | static_cast<std::uint32_t>(table.successor(w))) & (n - 1);
    }
    debruijn_ok = debruijn_ok && w == 0;
  }

  const bool pass = ledger_ok && tv_ok && corpus_ok && debruijn_ok;
  report("C9 oracle-equivalences", pass,
         std::string("ledger=") + (ledger_ok ? "ok" : "FAIL") + " tv=" +
             (tv_ok ? "ok" : "FAIL") + " corpus=" + (corpus_ok ? "ok" : "FAIL") +
             " debruijn=" + (debruijn_ok ? "ok" : "FAIL"));
}

// --- C10: the smoothing gap bound ------------------------------------------

void criterion10() {
  Rng rng(4);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int actions = 2 + static_cast<int>(rng.next_u64() % 5);
    const int states = 2 + static_cast<int>(rng.next_u64() % 4);
    std::vector<double> values(static_cast<std::size_t>(actions) * states);
    for (double& v : values) v = 2.0 * rng.next_unit() - 1.0;
    const UtilityMatrix U(actions, states, std::move(values));
    std::vector<double> probs(states);
    double sum = 0.0;
    for (double& x : probs) {
      x = rng.next_unit() + 1e-3;
      sum += x;
    }
    for (double& x : probs) x /= sum;
    const StateDist mu(std::move(probs));
    const double eta = std::exp(rng.next_unit() * 8.0 - 6.0);
    const double br = action_utility(U, best_response(U, mu), mu);
    const double qbr = expected_utility(U, quantal_best_response(U, mu, eta), mu);
    worst = std::max(worst, (br - qbr) - eta * std::log(static_cast<double>(actions)));
  }
  report("C10 smoothing-gap", worst <= 1e-12, "max_excess=" + fmt_fixed(worst, 15));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
