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

#ifndef LOWREGRET_COMMANDS_HPP_
#define LOWREGRET_COMMANDS_HPP_

#include <string>
#include <vector>

#include "lowregret/parallel.hpp"
#include "lowregret/specparse.hpp"

namespace lowregret {

// Text-producing command bodies behind the CLI, kept separate so tests can
// pin the emitted bytes. Every command is a pure function of (config, seed);
// numbers are printed with fixed precision, '.' radix, no locale.

// Rows: trial,seed,model,adversary,T,regret,switched,switch_time followed by
// one summary row (trial = "summary") whose regret column holds the mean,
// switched column the switch frequency, and switch_time column the 95% CI
// half-width of the regret.
std::string cmd_simulate(const ExperimentConfig& config, ExecMode mode = ExecMode::kParallel);

// One row P,Q,T,method,value,ci under a header. method is "exact" or "mc".
std::string cmd_tv(const std::string& spec_p, const std::string& spec_q, int T,
                   const std::string& method, long samples, std::uint64_t seed,
                   ExecMode mode = ExecMode::kParallel);

struct DatasetCmdResult {
  std::string jsonl;
  std::string stats;
};

DatasetCmdResult cmd_dataset(const ExperimentConfig& config, int n_base, int n_polya,
                             long max_draws, bool fixed_pool,
                             ExecMode mode = ExecMode::kParallel);

// Rows: candidate,tv_lb,regret_vs_M1,sum for the built-in candidate suite at
// order L (horizon 2L). Sets *all_above when every sum clears 1/12.
std::string cmd_impossibility(int L, int trials, std::uint64_t seed, bool* all_above,
                              ExecMode mode = ExecMode::kParallel);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
};

// The V-score switching evaluation battery: properness and boundedness of
// the score family on a 0.01 grid, fast-vs-reference gap agreement, the
// forced-switch and in-distribution switching behaviors, and downstream
// best-response regret under random binary utilities.
std::vector<CheckResult> vswitch_battery(std::uint64_t seed, int indist_trials = 1000,
                                         ExecMode mode = ExecMode::kParallel);

std::string checks_to_csv(const std::vector<CheckResult>& checks);

std::string fmt_fixed(double v, int precision);

}  // namespace lowregret

#endif  // LOWREGRET_COMMANDS_HPP_
