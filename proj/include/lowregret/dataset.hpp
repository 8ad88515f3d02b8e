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

#ifndef LOWREGRET_DATASET_HPP_
#define LOWREGRET_DATASET_HPP_

#include <map>
#include <string>

#include "lowregret/core.hpp"
#include "lowregret/parallel.hpp"
#include "lowregret/regret.hpp"

namespace lowregret {

// Training-corpus generator mixing base-model samples with filtered urn
// samples. An urn draw is kept only when the base policy QBR(base, 1/sqrt(T))
// shows prefix regret above alpha_mask / sqrt(t) somewhere along it; the
// first such t is recorded so a trainer can mask the loss over the prefix
// that precedes the regret violation (the part still explained by the base
// distribution).

struct CorpusRecord {
  std::vector<State> seq;
  std::optional<int> mask_from;  // present iff source == kPolya
  enum class Source { kBase, kPolya } source;
};

struct CorpusOptions {
  double alpha_mask = 1.5;
  int n_base = 0;
  int n_polya_target = 0;
  int T = 1024;
  // Quota mode (default) redraws until n_polya_target urn records are kept or
  // the draw budget runs out; fixed-pool mode draws exactly n_polya_target
  // candidates and keeps the passers.
  bool fixed_pool = false;
  long max_draws = 0;  // 0: 100 * n_polya_target
};

struct CorpusResult {
  std::vector<CorpusRecord> records;
  long polya_draws = 0;
  int polya_kept = 0;
  bool budget_exhausted = false;
};

// First round t with prefix regret of QBR(base, 1/sqrt(T)) strictly above
// alpha_mask / sqrt(t), or nullopt. This is the keep rule; tests re-verify it
// per record with a from-scratch regret recomputation.
std::optional<int> first_mask_violation(const PredictionModel& base, const UtilityMatrix& U,
                                        double alpha_mask, std::span<const State> seq);

CorpusResult generate_corpus(const PredictionModel& base, const UtilityMatrix& U,
                             const CorpusOptions& opts, std::uint64_t seed,
                             ExecMode mode = ExecMode::kParallel);

// One record per line: {"seq":"01...","mask_from":<int|null>,"source":"..."}.
// Field names and order are fixed; downstream trainers parse these verbatim.
std::string corpus_to_jsonl(const CorpusResult& corpus);

// Kept fraction plus a sparse mask_from histogram, one line.
std::string corpus_stats_line(const CorpusResult& corpus, const CorpusOptions& opts);

}  // namespace lowregret

#endif  // LOWREGRET_DATASET_HPP_
