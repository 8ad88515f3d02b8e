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

#include "lowregret/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowregret/regret.hpp"

namespace lowregret {

StateDist polya_predict(std::span<const State> prefix, int alphabet_size) {
  std::vector<long long> counts(alphabet_size, 0);
  for (State s : prefix) ++counts[s];
  return urn_from_counts(counts, static_cast<long long>(prefix.size()));
}

namespace {

class PolyaEvaluator final : public StepEvaluator {
 public:
  explicit PolyaEvaluator(int alphabet) : counts_(alphabet, 0) {}

  StateDist predict() override { return urn_from_counts(counts_, total_); }
  void append(State s) override {
    ++counts_[s];
    ++total_;
  }
  int position() const override { return static_cast<int>(total_); }

 private:
  std::vector<long long> counts_;
  long long total_ = 0;
};

}  // namespace

std::unique_ptr<StepEvaluator> PolyaUrnModel::make_evaluator() const {
  return std::make_unique<PolyaEvaluator>(alphabet_.size);
}

PiecewiseBernoulliModel::PiecewiseBernoulliModel(std::vector<std::pair<int, double>> schedule)
    : schedule_(std::move(schedule)) {
  if (schedule_.empty() || schedule_.front().first != 1)
    throw std::invalid_argument("schedule must start at round 1");
  int prev = 0;
  for (const auto& [start, p] : schedule_) {
    if (start <= prev) throw std::invalid_argument("schedule rounds must strictly increase");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("schedule probabilities must lie in (0,1)");
    prev = start;
  }
}

double PiecewiseBernoulliModel::p_one_at_round(int t) const {
  double p = schedule_.front().second;
  for (const auto& [start, q] : schedule_) {
    if (start > t) break;
    p = q;
  }
  return p;
}

PeriodicDriftModel::PeriodicDriftModel(double phi) : phi_(phi) {
  if (!(phi > 0.0)) throw std::invalid_argument("drift period must be positive");
}

double PeriodicDriftModel::p_one_at_round(int t) const {
  const double pi = std::numbers::pi;
  return std::abs(std::sin(pi / 6.0 + static_cast<double>(t) * pi / phi_));
}

DeBruijnTable::DeBruijnTable(int order) : order_(order) {
  if (order < 1 || order > 24) throw std::invalid_argument("de Bruijn order must be in [1, 24]");
  const std::uint32_t num_edges = 1u << order;        // length-L windows
  const std::uint32_t num_vertices = 1u << (order - 1);  // length-(L-1) windows
  const std::uint32_t vmask = num_vertices - 1;

  // Hierholzer over the de Bruijn graph. next_bit[v] tracks the first unused
  // outgoing edge (0 then 1), so the walk and the resulting cycle are fixed.
  std::vector<std::uint8_t> next_bit(num_vertices, 0);
  std::vector<std::uint8_t> bits;  // edge labels along the Eulerian cycle
  bits.reserve(num_edges);
  std::vector<std::uint32_t> vertex_stack;
  std::vector<std::uint8_t> edge_stack;
  vertex_stack.push_back(0);
  while (!vertex_stack.empty()) {
    const std::uint32_t v = vertex_stack.back();
    if (next_bit[v] < 2) {
      const std::uint8_t b = next_bit[v]++;
      vertex_stack.push_back(((v << 1) | b) & vmask);
      edge_stack.push_back(b);
    } else {
      vertex_stack.pop_back();
      if (!edge_stack.empty()) {
        bits.push_back(edge_stack.back());
        edge_stack.pop_back();
      }
    }
  }
  if (bits.size() != num_edges) throw std::logic_error("Eulerian cycle construction failed");
  // Hierholzer emits the circuit in reverse edge order.
  std::reverse(bits.begin(), bits.end());

  // Slide an L-window over the cyclic string; each window must occur once.
  succ_.assign(num_edges, 2);
  const std::uint32_t wmask = num_edges - 1;
  std::uint32_t w = 0;
  for (int i = 0; i < order; ++i) w = (w << 1) | bits[i];
  for (std::uint32_t i = 0; i < num_edges; ++i) {
    const std::uint8_t next = bits[(i + order) % num_edges];
    if (succ_[w] != 2) throw std::logic_error("duplicate window in de Bruijn cycle");
    succ_[w] = next;
    w = ((w << 1) | next) & wmask;
  }
}

DeBruijnModel::DeBruijnModel(int order, bool flip, double eps)
    : DeBruijnModel(std::make_shared<DeBruijnTable>(order), flip, eps) {}

DeBruijnModel::DeBruijnModel(std::shared_ptr<const DeBruijnTable> table, bool flip, double eps)
    : table_(std::move(table)), flip_(flip), eps_(eps) {
  if (!(eps >= 0.0 && eps < 0.25)) throw std::invalid_argument("leak eps must lie in [0, 1/4)");
}

StateDist DeBruijnModel::predict(std::span<const State> prefix) const {
  const int L = table_->order();
  const int n = static_cast<int>(prefix.size());
  if (n < L) return StateDist::uniform(2);
  std::uint32_t w = 0;
  for (int i = n - L; i < n; ++i) w = (w << 1) | static_cast<std::uint32_t>(prefix[i]);
  int next = table_->successor(w);
  if (flip_) next = 1 - next;
  std::vector<double> p(2, eps_);
  p[next] = 1.0 - eps_;
  return StateDist(std::move(p));
}

WindowedModel::WindowedModel(ModelPtr base, int window) : base_(std::move(base)), window_(window) {
  if (!base_) throw std::invalid_argument("windowed model needs a base model");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
}

}  // namespace lowregret
