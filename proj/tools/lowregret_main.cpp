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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lowregret/commands.hpp"
#include "lowregret/metrics.hpp"

namespace {

constexpr int kExitParseError = 2;
constexpr int kExitBudgetError = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

struct CommonFlags {
  std::string config_path;
  lowregret::ExperimentConfig config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key=value config file; flags override it");
    cmd->add_option("--model", config.model, "model spec");
    cmd->add_option("--adversary", config.adversary, "adversary spec");
    cmd->add_option("--horizon", config.horizon, "rounds per trial");
    cmd->add_option("--trials", config.trials, "independent trials");
    cmd->add_option("--eta", config.eta, "QBR temperature or 'auto' (1/sqrt(T))");
    cmd->add_option("--alpha", config.alpha, "default alpha (switch exponent / mask knob)");
    cmd->add_option("--seed", config.seed, "root RNG seed");
    cmd->add_option("--out", config.out, "output path (stdout when empty)");
  }

  // Re-reads the config file, then lets explicitly passed flags win.
  lowregret::ExperimentConfig resolve(const CLI::App* cmd) const {
    if (config_path.empty()) return config;
    lowregret::ExperimentConfig merged = lowregret::ExperimentConfig::from_file(config_path);
    if (cmd->count("--model")) merged.model = config.model;
    if (cmd->count("--adversary")) merged.adversary = config.adversary;
    if (cmd->count("--horizon")) merged.horizon = config.horizon;
    if (cmd->count("--trials")) merged.trials = config.trials;
    if (cmd->count("--eta")) merged.eta = config.eta;
    if (cmd->count("--alpha")) merged.alpha = config.alpha;
    if (cmd->count("--seed")) merged.seed = config.seed;
    if (cmd->count("--out")) merged.out = config.out;
    return merged;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lowregret: robustified next-token models for online decision making"};
  app.require_subcommand(1);

  bool serial = false;
  app.add_flag("--serial", serial, "run Monte Carlo loops on one thread");

  auto* simulate = app.add_subcommand("simulate", "play a model against an adversary");
  CommonFlags sim_flags;
  sim_flags.attach(simulate);

  auto* tv = app.add_subcommand("tv", "distance between two sequence distributions");
  std::string spec_p;
  std::string spec_q;
  std::string method = "exact";
  long samples = 100000;
  int tv_horizon = 10;
  std::uint64_t tv_seed = 0;
  std::string tv_out;
  tv->add_option("-P,--model", spec_p, "first model spec")->required();
  tv->add_option("-Q,--model-q", spec_q, "second model spec")->required();
  tv->add_option("--horizon", tv_horizon, "sequence length");
  tv->add_option("--method", method, "exact or mc");
  tv->add_option("--samples", samples, "Monte Carlo sample count");
  tv->add_option("--seed", tv_seed, "root RNG seed");
  tv->add_option("--out", tv_out, "output path (stdout when empty)");

  auto* dataset = app.add_subcommand("dataset", "emit a masked training corpus");
  CommonFlags data_flags;
  data_flags.attach(dataset);
  int n_polya = -1;
  long max_draws = 0;
  bool fixed_pool = false;
  dataset->add_option("--n-polya", n_polya, "kept urn records target (default: trials)");
  dataset->add_option("--max-draws", max_draws, "urn draw budget (default: 100x target)");
  dataset->add_flag("--fixed-pool", fixed_pool, "filter a fixed pool instead of redrawing");

  auto* impossibility =
      app.add_subcommand("impossibility", "bounded-context tradeoff for the candidate suite");
  int order = 8;
  int imp_trials = 128;
  std::uint64_t imp_seed = 0;
  std::string imp_out;
  impossibility->add_option("--L", order, "context window order (horizon is 2L)");
  impossibility->add_option("--trials", imp_trials, "trajectories per candidate");
  impossibility->add_option("--seed", imp_seed, "root RNG seed");
  impossibility->add_option("--out", imp_out, "output path (stdout when empty)");

  auto* veval = app.add_subcommand("vswitch-eval", "run the V-score switching battery");
  std::uint64_t veval_seed = 0;
  int veval_trials = 1000;
  std::string veval_out;
  veval->add_option("--seed", veval_seed, "root RNG seed");
  veval->add_option("--trials", veval_trials, "in-distribution trajectories");
  veval->add_option("--out", veval_out, "output path (stdout when empty)");

  CLI11_PARSE(app, argc, argv);
  const auto mode = serial ? lowregret::ExecMode::kSerial : lowregret::ExecMode::kParallel;

  try {
    if (simulate->parsed()) {
      const auto config = sim_flags.resolve(simulate);
      write_output(config.out, lowregret::cmd_simulate(config, mode));
    } else if (tv->parsed()) {
      write_output(tv_out, lowregret::cmd_tv(spec_p, spec_q, tv_horizon, method, samples,
                                             tv_seed, mode));
    } else if (dataset->parsed()) {
      const auto config = data_flags.resolve(dataset);
      const int base_count = config.trials;
      const int polya_count = n_polya >= 0 ? n_polya : config.trials;
      const auto result =
          lowregret::cmd_dataset(config, base_count, polya_count, max_draws, fixed_pool, mode);
      write_output(config.out, result.jsonl);
      std::cerr << result.stats << "\n";
    } else if (impossibility->parsed()) {
      bool all_above = false;
      const std::string csv =
          lowregret::cmd_impossibility(order, imp_trials, imp_seed, &all_above, mode);
      write_output(imp_out, csv);
      if (!all_above) {
        std::cerr << "tradeoff sum fell below 1/12 for some candidate\n";
        return 1;
      }
    } else if (veval->parsed()) {
      const auto checks = lowregret::vswitch_battery(veval_seed, veval_trials, mode);
      write_output(veval_out, lowregret::checks_to_csv(checks));
      for (const auto& c : checks) {
        if (!c.pass) {
          std::cerr << "check failed: " << c.name << "\n";
          return 1;
        }
      }
    }
  } catch (const lowregret::SpecParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const lowregret::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudgetError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
