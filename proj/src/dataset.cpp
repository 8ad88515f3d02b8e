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

#include "lowregret/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lowregret/decision.hpp"
#include "lowregret/models.hpp"

namespace lowregret {

std::optional<int> first_mask_violation(const PredictionModel& base, const UtilityMatrix& U,
                                        double alpha_mask, std::span<const State> seq) {
  if (alpha_mask <= 0.0) throw std::invalid_argument("alpha_mask must be positive");
  const int T = static_cast<int>(seq.size());
  const double eta = auto_temperature(T);
  RegretLedger ledger(U, base.alphabet_size(), eta);
  auto eval = base.make_evaluator();
  for (int t = 1; t <= T; ++t) {
    const MixedAction pi = quantal_best_response(U, eval->predict(), eta);
    ledger.update(pi, seq[t - 1]);
    if (ledger.regret_model() > alpha_mask / std::sqrt(static_cast<double>(t))) return t;
    eval->append(seq[t - 1]);
  }
  return std::nullopt;
}

namespace {

struct PolyaDraw {
  std::vector<State> seq;
  std::optional<int> mask_from;
};

}  // namespace

CorpusResult generate_corpus(const PredictionModel& base, const UtilityMatrix& U,
                             const CorpusOptions& opts, std::uint64_t seed, ExecMode mode) {
  if (opts.n_base < 0 || opts.n_polya_target < 0 || opts.T < 1)
    throw std::invalid_argument("bad corpus options");
  CorpusResult out;
  out.records.reserve(opts.n_base + opts.n_polya_target);

  std::vector<std::vector<State>> base_seqs(opts.n_base);
  indexed_for(opts.n_base, mode, [&](long i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    base_seqs[i] = sample_sequence(base, opts.T, rng).states;
  });
  for (auto& s : base_seqs)
    out.records.push_back(CorpusRecord{std::move(s), std::nullopt, CorpusRecord::Source::kBase});

  const PolyaUrnModel urn(base.alphabet_size());
  const long budget = opts.fixed_pool
                          ? opts.n_polya_target
                          : (opts.max_draws > 0 ? opts.max_draws : 100L * opts.n_polya_target);

  // Draw in fixed-size batches; draw j always uses substream n_base + j, and
  // records are collected in draw order, so the output is independent of
  // batch size and thread count.
  constexpr long kBatch = 64;
  long next_draw = 0;
  while (out.polya_kept < opts.n_polya_target && next_draw < budget) {
    const long batch = std::min(kBatch, budget - next_draw);
    std::vector<PolyaDraw> draws(batch);
    indexed_for(batch, mode, [&](long i) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(opts.n_base + next_draw + i));
      PolyaDraw d;
      d.seq = sample_sequence(urn, opts.T, rng).states;
      d.mask_from = first_mask_violation(base, U, opts.alpha_mask, d.seq);
      draws[i] = std::move(d);
    });
    for (long i = 0; i < batch && out.polya_kept < opts.n_polya_target; ++i) {
      ++out.polya_draws;
      if (draws[i].mask_from) {
        out.records.push_back(CorpusRecord{std::move(draws[i].seq), draws[i].mask_from,
                                           CorpusRecord::Source::kPolya});
        ++out.polya_kept;
      }
    }
    next_draw += batch;
  }
  out.budget_exhausted = out.polya_kept < opts.n_polya_target;
  return out;
}

std::string corpus_to_jsonl(const CorpusResult& corpus) {
  std::string out;
  for (const CorpusRecord& rec : corpus.records) {
    out += "{\"seq\":\"";
    for (State s : rec.seq) {
      if (s < 0 || s > 9) throw std::invalid_argument("corpus serialization expects states 0-9");
      out += static_cast<char>('0' + s);
    }
    out += "\",\"mask_from\":";
    out += rec.mask_from ? std::to_string(*rec.mask_from) : "null";
    out += ",\"source\":\"";
    out += rec.source == CorpusRecord::Source::kBase ? "base" : "polya";
    out += "\"}\n";
  }
  return out;
}

std::string corpus_stats_line(const CorpusResult& corpus, const CorpusOptions& opts) {
  std::map<int, int> hist;
  for (const CorpusRecord& rec : corpus.records)
    if (rec.mask_from) ++hist[*rec.mask_from];
  std::ostringstream os;
  os << "base=" << opts.n_base << " polya_draws=" << corpus.polya_draws
     << " polya_kept=" << corpus.polya_kept << " kept_fraction=";
  char buf[32];
  const double frac = corpus.polya_draws > 0
                          ? static_cast<double>(corpus.polya_kept) / corpus.polya_draws
                          : 0.0;
  std::snprintf(buf, sizeof buf, "%.6f", frac);
  os << buf << " budget_exhausted=" << (corpus.budget_exhausted ? 1 : 0) << " mask_from_hist=";
  bool first = true;
  for (const auto& [t, count] : hist) {
    if (!first) os << ",";
    os << t << ":" << count;
    first = false;
  }
  if (hist.empty()) os << "-";
  return os.str();
}

}  // namespace lowregret
