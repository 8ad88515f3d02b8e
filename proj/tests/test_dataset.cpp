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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowregret/dataset.hpp"
#include "lowregret/decision.hpp"
#include "lowregret/models.hpp"

using namespace lowregret;

namespace {

const UtilityMatrix kMatch = UtilityMatrix::match(2);

std::shared_ptr<PiecewiseBernoulliModel> half_bernoulli(int T) {
  return std::make_shared<PiecewiseBernoulliModel>(
      std::vector<std::pair<int, double>>{{1, 1.0 / 3.0}, {T / 2 + 1, 2.0 / 3.0}});
}

// From-scratch reimplementation of the keep rule: rebuild the policy trace
// and evaluate the prefix regret definition directly at every t.
std::optional<int> oracle_first_violation(const PredictionModel& base, double alpha_mask,
                                          std::span<const State> seq) {
  const int T = static_cast<int>(seq.size());
  const double eta = 1.0 / std::sqrt(static_cast<double>(T));
  PolicyTrace trace;
  for (int t = 1; t <= T; ++t) {
    trace.push_back(quantal_best_response(kMatch, base.predict(seq.first(t - 1)), eta));
    if (external_regret(trace, seq.first(t), kMatch) > alpha_mask / std::sqrt(static_cast<double>(t)))
      return t;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("every kept record re-verifies from scratch") {
  const int T = 256;
  auto base = half_bernoulli(T);
  CorpusOptions opts;
  opts.alpha_mask = 1.5;
  opts.n_base = 5;
  opts.n_polya_target = 40;
  opts.T = T;
  const CorpusResult corpus = generate_corpus(*base, kMatch, opts, 77, ExecMode::kSerial);

  CHECK(corpus.records.size() == static_cast<std::size_t>(opts.n_base + corpus.polya_kept));
  int polya_records = 0;
  for (const CorpusRecord& rec : corpus.records) {
    if (rec.source == CorpusRecord::Source::kBase) {
      CHECK_FALSE(rec.mask_from.has_value());
      continue;
    }
    ++polya_records;
    REQUIRE(rec.mask_from.has_value());
    const auto oracle = oracle_first_violation(*base, opts.alpha_mask, rec.seq);
    REQUIRE(oracle.has_value());
    CHECK(*oracle == *rec.mask_from);
    CHECK(*rec.mask_from >= 1);
    CHECK(*rec.mask_from <= T);
  }
  CHECK(polya_records == corpus.polya_kept);
}

TEST_CASE("identical seeds give byte-identical corpora") {
  const int T = 128;
  auto base = half_bernoulli(T);
  CorpusOptions opts;
  opts.n_base = 8;
  opts.n_polya_target = 8;
  opts.T = T;
  const CorpusResult a = generate_corpus(*base, kMatch, opts, 42, ExecMode::kSerial);
  const CorpusResult b = generate_corpus(*base, kMatch, opts, 42, ExecMode::kParallel);
  CHECK(corpus_to_jsonl(a) == corpus_to_jsonl(b));
  const CorpusResult c = generate_corpus(*base, kMatch, opts, 43, ExecMode::kSerial);
  CHECK(corpus_to_jsonl(a) != corpus_to_jsonl(c));
}

TEST_CASE("an unreachable mask threshold keeps nothing") {
  const int T = 128;
  auto base = half_bernoulli(T);
  CorpusOptions opts;
  opts.alpha_mask = 1000.0;
  opts.n_base = 2;
  opts.n_polya_target = 4;
  opts.T = T;
  opts.max_draws = 50;
  const CorpusResult corpus = generate_corpus(*base, kMatch, opts, 7, ExecMode::kSerial);
  CHECK(corpus.polya_kept == 0);
  CHECK(corpus.budget_exhausted);
  CHECK(corpus.polya_draws == 50);
  CHECK(corpus.records.size() == 2);
  const std::string stats = corpus_stats_line(corpus, opts);
  CHECK(stats.find("polya_kept=0") != std::string::npos);
  CHECK(stats.find("budget_exhausted=1") != std::string::npos);
  CHECK(stats.find("mask_from_hist=-") != std::string::npos);
}

TEST_CASE("fixed-pool mode draws exactly the pool size") {
  const int T = 128;
  auto base = half_bernoulli(T);
  CorpusOptions opts;
  opts.n_base = 0;
  opts.n_polya_target = 30;
  opts.T = T;
  opts.fixed_pool = true;
  const CorpusResult corpus = generate_corpus(*base, kMatch, opts, 11, ExecMode::kSerial);
  CHECK(corpus.polya_draws == 30);
  CHECK(corpus.polya_kept <= 30);
}

TEST_CASE("serialization uses the fixed field layout") {
  CorpusResult corpus;
  corpus.records.push_back(CorpusRecord{{0, 1, 1, 0}, std::nullopt, CorpusRecord::Source::kBase});
  corpus.records.push_back(CorpusRecord{{1, 1, 0, 0}, 3, CorpusRecord::Source::kPolya});
  CHECK(corpus_to_jsonl(corpus) ==
        "{\"seq\":\"0110\",\"mask_from\":null,\"source\":\"base\"}\n"
        "{\"seq\":\"1100\",\"mask_from\":3,\"source\":\"polya\"}\n");
}

TEST_CASE("a loose mask threshold keeps nearly every urn draw") {
  const int T = 1024;
  auto base = half_bernoulli(T);
  CorpusOptions opts;
  opts.alpha_mask = 1.5;
  opts.n_base = 0;
  opts.n_polya_target = 32;
  opts.T = T;
  const CorpusResult corpus = generate_corpus(*base, kMatch, opts, 2024, ExecMode::kSerial);
  CHECK(corpus.polya_kept == 32);
  // Regression landmark from the first full run at these settings: roughly
  // 97% of urn draws show an early regret violation against this base.
  const double fraction = static_cast<double>(corpus.polya_kept) / corpus.polya_draws;
  CHECK(fraction >= 0.85);
}
