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

// Wall-clock comparison of the Monte Carlo kernels in serial and OpenMP
// mode, plus a result-equality column: the parallel path must reproduce the
// serial numbers exactly, not just statistically.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "lowregret/adversary.hpp"
#include "lowregret/bounded.hpp"
#include "lowregret/commands.hpp"
#include "lowregret/metrics.hpp"
#include "lowregret/models.hpp"
#include "lowregret/robustify.hpp"
#include "lowregret/vswitch.hpp"

using namespace lowregret;

namespace {

double time_of(const std::function<double(ExecMode)>& kernel, ExecMode mode, double* result) {
  const auto start = std::chrono::steady_clock::now();
  *result = kernel(mode);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const std::string& name, const std::function<double(ExecMode)>& kernel) {
  double serial_value = 0.0;
  double parallel_value = 0.0;
  const double t_serial = time_of(kernel, ExecMode::kSerial, &serial_value);
  const double t_parallel = time_of(kernel, ExecMode::kParallel, &parallel_value);
  std::printf("%-28s %9.3fs %9.3fs %7.2fx %s\n", name.c_str(), t_serial, t_parallel,
              t_serial / t_parallel, serial_value == parallel_value ? "exact" : "DIFFERS");
}

}  // namespace

int main() {
  std::printf("OpenMP compiled in: %s\n", parallel_enabled() ? "yes" : "no");
  std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial", "openmp", "speedup", "agreement");

  const UtilityMatrix match = UtilityMatrix::match(2);

  row("tv_mc 2e5 samples", [&](ExecMode mode) {
    const PiecewiseBernoulliModel p({{1, 1.0 / 3.0}, {257, 2.0 / 3.0}});
    const PolyaUrnModel q(2);
    return tv_mc(p, q, 512, 200000, 9, mode).value;
  });

  row("simulate 256 trials", [&](ExecMode mode) {
    const int T = 1024;
    auto base = std::make_shared<PiecewiseBernoulliModel>(
        std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {T / 2 + 1, 2.0 / 3.0}});
    const RobustModel model(base, match, T, 1.0);
    const EnvAdversaryFactory env(base);
    return interaction_regret_stats(model, env, match, auto_temperature(T), T, 256, 3, mode)
        .mean;
  });

  row("restart eval 64 trials", [&](ExecMode mode) {
    const int T = 1024;
    auto base = std::make_shared<DeBruijnModel>(8, false, 0.0);
    const BoundedRobustModel model(base, match, 8, 72, T, 1.0);
    const EnvAdversaryFactory env(base);
    return restart_regret_eval(model, env, T, 64, 3, mode).regret.mean;
  });

  row("switch scan 400 draws", [&](ExecMode mode) {
    const int T = 2048;
    auto base = std::make_shared<PiecewiseBernoulliModel>(
        std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {T / 2 + 1, 2.0 / 3.0}});
    const VSwitchModel model(base, VScoreParams::defaults(T), T);
    std::vector<double> taus(400);
    indexed_for(400, mode, [&](long i) {
      Rng rng = Rng::stream(11, i);
      const StateSeq seq = sample_sequence(*base, T, rng);
      taus[i] = static_cast<double>(model.switch_time(seq.view()).tau.value_or(0));
    });
    double sum = 0.0;
    for (double v : taus) sum += v;
    return sum;
  });

  return 0;
}
