// Copyright 2026 The cogdist Authors.
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

// Acceptance suite. Each criterion prints exactly one line:
//   [PASS|FAIL|SKIP] <id> <name>: <detail>
// Usage: acceptance [criterion-id ...]; no argument runs every criterion.
// Exit status: 0 all passed, 1 any failure, 77 all requested criteria skipped.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cogdist/corpus.h"
#include "cogdist/evaluation.h"
#include "cogdist/learning.h"
#include "cogdist/model.h"
#include "cogdist/recognizer.h"
#include "cogdist/textprep.h"
#include "synthetic.h"
#include "test_util.h"

namespace {

using namespace cogdist;
using cogdist::testing::make_model;

// Tolerances and targets.
constexpr double kDataset1Weighted = 0.47;
constexpr double kDataset1Unweighted = 0.46;
constexpr double kDataset1Tol = 0.05;
constexpr double kDataset2Unweighted = 0.90;
constexpr double kDataset2Weighted = 0.89;
constexpr double kDataset2Tol = 0.02;
constexpr double kFnUfnLow = 0.41;
constexpr double kFnUfnHigh = 0.42;
constexpr double kFnUfnTol = 0.05;
constexpr double kIdentityTol = 1e-12;
constexpr double kLogBaseTol = 1e-12;
constexpr double kLatencyBudgetMs = 11.0;
constexpr double kGridBudgetSeconds = 4.0 * 3600.0;
constexpr std::size_t kEquivalenceCases = 10000;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome fail(std::string d) { return {Status::kFail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::kSkip, std::move(d)}; }
Outcome verdict(bool ok, std::string d) { return {ok ? Status::kPass : Status::kFail, std::move(d)}; }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::optional<std::vector<LabeledText>> env_corpus(const char* data_var, const char* map_var,
                                                   const char* default_map) {
  const char* data = std::getenv(data_var);
  if (!data || !*data) return std::nullopt;
  const char* map = std::getenv(map_var);
  const std::filesystem::path colmap =
      map && *map ? std::filesystem::path(map)
                  : std::filesystem::path(COGDIST_SOURCE_DIR) / "config" / default_map;
  return load_dataset(data, load_column_map(colmap));
}

std::optional<std::vector<LabeledText>> dataset1() {
  return env_corpus("COGDIST_DATASET1", "COGDIST_DATASET1_COLMAP", "dataset1.colmap");
}

std::optional<std::vector<LabeledText>> dataset2() {
  return env_corpus("COGDIST_DATASET2", "COGDIST_DATASET2_COLMAP", "dataset2.colmap");
}

// Dataset 1 when available, the synthetic stand-in otherwise.
std::pair<std::vector<LabeledText>, std::string> timing_corpus() {
  if (auto d = dataset1()) return {std::move(*d), "dataset1"};
  return {cogdist::testing::synthetic_corpus({}), "surrogate"};
}

double protocol_f1(const std::vector<LabeledText>& corpus, int nm, SelectionMetric sm, int it,
                   int dt, bool weighted, double* mpe = nullptr) {
  LearningConfig learn;
  learn.max_order = nm;
  learn.metric = sm;
  learn.inclusion_threshold = it;
  RecognitionConfig rec;
  rec.detection_threshold = dt;
  rec.weighted = weighted;
  const EvalReport r = run_protocol(corpus, learn, rec);
  if (mpe) *mpe = r.mpe;
  return r.mean_f1;
}

Outcome dataset1_weighted() {
  auto corpus = dataset1();
  if (!corpus) return skip("COGDIST_DATASET1 not set");
  double mpe = 0;
  const double f1 = protocol_f1(*corpus, 2, SelectionMetric::kFCR, 0, 50, true, &mpe);
  return verdict(std::abs(f1 - kDataset1Weighted) <= kDataset1Tol,
                 "mean macro-F1 " + fmt("%.4f", f1) + " MPE " + fmt("%.1f%%", mpe) +
                     " (target 0.47 +/- 0.05)");
}

Outcome dataset1_unweighted() {
  auto corpus = dataset1();
  if (!corpus) return skip("COGDIST_DATASET1 not set");
  const double f1 = protocol_f1(*corpus, 2, SelectionMetric::kFCR, 10, 70, false);
  return verdict(std::abs(f1 - kDataset1Unweighted) <= kDataset1Tol,
                 "mean macro-F1 " + fmt("%.4f", f1) + " (target 0.46 +/- 0.05)");
}

Outcome dataset2_reproduction() {
  auto corpus = dataset2();
  if (!corpus) return skip("COGDIST_DATASET2 not set");
  const double unw = protocol_f1(*corpus, 2, SelectionMetric::kNLMI, 80, 40, false);
  const double w = protocol_f1(*corpus, 2, SelectionMetric::kNLMI, 90, 10, true);
  const bool ok = std::abs(unw - kDataset2Unweighted) <= kDataset2Tol &&
                  std::abs(w - kDataset2Weighted) <= kDataset2Tol;
  return verdict(ok, "unweighted " + fmt("%.4f", unw) + " (target 0.90 +/- 0.02), weighted " +
                         fmt("%.4f", w) + " (target 0.89 +/- 0.02), texts " +
                         std::to_string(corpus->size()));
}

Outcome hyperparameter_ordering() {
  auto corpus = dataset1();
  if (!corpus) return skip("COGDIST_DATASET1 not set");
  GridAxes axes = GridAxes::full();
  axes.orders = {1, 2};
  const auto cells = grid_search(*corpus, axes);
  double best_nm1 = 0, best_nm2 = 0;
  std::map<SelectionMetric, double> by_metric;
  for (const GridCell& c : cells) {
    (c.max_order == 1 ? best_nm1 : best_nm2) = std::max(c.max_order == 1 ? best_nm1 : best_nm2,
                                                       c.report.mean_f1);
    by_metric[c.metric] = std::max(by_metric[c.metric], c.report.mean_f1);
  }
  SelectionMetric top = SelectionMetric::kFCR;
  for (const auto& [m, f] : by_metric) {
    if (f > by_metric[top]) top = m;
  }
  auto near_band = [](double f) {
    return f >= kFnUfnLow - kFnUfnTol && f <= kFnUfnHigh + kFnUfnTol;
  };
  const double fn = by_metric[SelectionMetric::kFN];
  const double ufn = by_metric[SelectionMetric::kUFN];
  const bool ok = best_nm1 < best_nm2 && top == SelectionMetric::kFCR && near_band(fn) &&
                  near_band(ufn);
  return verdict(ok, "best NM=1 " + fmt("%.4f", best_nm1) + " vs NM=2 " + fmt("%.4f", best_nm2) +
                         ", top SM " + std::string(metric_name(top)) + ", FN " +
                         fmt("%.4f", fn) + ", UFN " + fmt("%.4f", ufn));
}

Outcome backend_equivalence() {
  std::mt19937_64 rng(7);
  const auto& vocab = cogdist::testing::small_vocab();
  std::size_t mismatches = 0;
  std::size_t matches_seen = 0;
  for (std::size_t c = 0; c < kEquivalenceCases; ++c) {
    const Model model = cogdist::testing::random_model(rng, vocab, 100, 5, 3);
    const TokenizedText text = tokenize(cogdist::testing::random_text(rng, vocab, 50));
    const auto naive = make_recognizer(model, Backend::kNaive);
    const auto kernel = make_recognizer(model, Backend::kKernel);
    for (SentenceMode mode : {SentenceMode::kBlocked, SentenceMode::kWholeText}) {
      const MatchCounts a = naive->count(text, mode);
      const MatchCounts b = kernel->count(text, mode);
      auto ma = naive->match(text, mode, true);
      auto mb = kernel->match(text, mode, true);
      matches_seen += ma.size();
      auto key = [](const AcceptedMatch& m) { return std::tuple(m.begin, m.order, m.entry); };
      auto by_key = [&](const AcceptedMatch& x, const AcceptedMatch& y) { return key(x) < key(y); };
      std::sort(ma.begin(), ma.end(), by_key);
      std::sort(mb.begin(), mb.end(), by_key);
      if (a.weighted != b.weighted || a.unweighted != b.unweighted || a.length != b.length ||
          ma != mb) {
        ++mismatches;
      }
    }
  }
  return verdict(mismatches == 0, std::to_string(kEquivalenceCases) + " cases x 2 sentence modes, " +
                                      std::to_string(matches_seen) + " matches, " +
                                      std::to_string(mismatches) + " mismatches");
}

Outcome priority_fixture() {
  const Model model = make_model({{"d1", "not a bad thing", 0.8}, {"d2", "bad thing", 0.5},
                                  {"d2", "bad", 0.9}});
  const TokenizedText text = tokenize("not a bad thing");
  std::string detail;
  bool ok = true;
  for (Backend b : {Backend::kNaive, Backend::kKernel}) {
    const auto engine = make_recognizer(model, b);
    for (bool weighted : {true, false}) {
      RecognitionConfig cfg;
      cfg.weighted = weighted;
      const RecognitionResult r = engine->recognize(text, cfg);
      const double expect_d1 = 4.0 * (weighted ? 0.8 : 1.0);
      ok = ok && r.raw_counts == std::vector<double>{expect_d1, 0.0} && r.matches.size() == 1 &&
           r.matches[0].label == "d1" && r.matches[0].ngram.key() == "not a bad thing";
    }
  }
  detail = ok ? "only the 4-gram counted, C_d1 = 4H and C_d2 = 0 on both backends"
              : "lower-order N-grams leaked into the counts";
  return verdict(ok, detail);
}

std::string invariant_failures() {
  std::string failed;
  auto note = [&](const char* name) { failed += (failed.empty() ? "" : ", ") + std::string(name); };

  cogdist::testing::SyntheticSpec spec;
  spec.texts = 300;
  spec.mean_tokens = 40;
  spec.vocabulary = 600;
  spec.seed = 99;
  const auto corpus = cogdist::testing::synthetic_corpus(spec);
  const CorpusStats stats = collect_stats(corpus, 3);

  // Learning monotonicity in IT.
  bool it_ok = true;
  for (SelectionMetric m : kAllMetrics) {
    const RawScores raw = compute_scores(stats, m);
    std::optional<Model> prev;
    for (int it = 0; it <= 90; it += 10) {
      LearningConfig cfg;
      cfg.max_order = 3;
      cfg.metric = m;
      cfg.inclusion_threshold = it;
      Model cur = build_model(stats, raw, cfg);
      if (prev) {
        for (std::size_t j = 0; j < cur.dictionaries().size(); ++j) {
          const auto& looser = prev->dictionaries()[j].entries;
          for (const auto& [g, w] : cur.dictionaries()[j].entries) {
            if (!looser.contains(g)) it_ok = false;
          }
        }
      }
      prev = std::move(cur);
    }
  }
  if (!it_ok) note("IT monotonicity");

  // MR = FCR * CFR.
  double worst = 0;
  for (NGramId g = 0; g < stats.num_ngrams(); ++g) {
    for (std::size_t i = 0; i < kNumDistortions; ++i) {
      const Distortion d = distortion_at(i);
      if (stats.unique_frequency(g, d) == 0) continue;
      const double mr = score(stats, g, d, SelectionMetric::kMR);
      const double prod = score(stats, g, d, SelectionMetric::kFCR) *
                          score(stats, g, d, SelectionMetric::kCFR);
      worst = std::max(worst, std::abs(mr - prod));
    }
  }
  if (worst > kIdentityTol) note("MR identity");

  // TF-IDF log-base invariance after normalization.
  auto tfidf_model = [&](double base, Normalization norm) {
    LearningConfig cfg;
    cfg.max_order = 3;
    cfg.metric = SelectionMetric::kTFIDF;
    cfg.tfidf_log_base = base;
    cfg.normalization = norm;
    return build_model(stats, cfg);
  };
  bool base_ok = true;
  for (Normalization norm : {Normalization::kPerDistortion, Normalization::kGlobal}) {
    const Model ref = tfidf_model(std::numbers::e, norm);
    for (double base : {2.0, 10.0}) {
      const Model other = tfidf_model(base, norm);
      for (std::size_t j = 0; j < ref.dictionaries().size(); ++j) {
        const auto& a = ref.dictionaries()[j].entries;
        const auto& b = other.dictionaries()[j].entries;
        if (a.size() != b.size()) {
          base_ok = false;
          continue;
        }
        for (const auto& [g, w] : a) {
          auto it = b.find(g);
          if (it == b.end() || std::abs(it->second - w) > kLogBaseTol) base_ok = false;
        }
      }
    }
  }
  if (!base_ok) note("TF-IDF log base");

  // Decision monotonicity in DT and LS ranking preservation.
  LearningConfig rec_cfg;
  rec_cfg.max_order = 3;
  const Model model = build_model(stats, rec_cfg);
  const auto engine = make_recognizer(model, Backend::kKernel);
  bool dt_ok = true, ls_ok = true;
  for (const LabeledText& t : corpus) {
    const TokenizedText tok = tokenize(t.text);
    RecognitionConfig on, off;
    off.log_scaling = false;
    const RecognitionResult a = engine->recognize(tok, on);
    const RecognitionResult b = engine->recognize(tok, off);
    for (int dt = 0; dt < 100; ++dt) {
      const auto lo = decide(a, dt);
      const auto hi = decide(a, dt + 1);
      for (std::size_t j = 0; j < lo.size(); ++j) {
        if (hi[j] && !lo[j]) dt_ok = false;
      }
    }
    for (std::size_t x = 0; x < a.scores.size(); ++x) {
      for (std::size_t y = 0; y < a.scores.size(); ++y) {
        if (b.scores[x] < b.scores[y] && a.scores[x] > a.scores[y]) ls_ok = false;
      }
    }
  }
  if (!dt_ok) note("DT monotonicity");
  if (!ls_ok) note("LS ranking");

  // Mask non-overlap on fuzzed inputs.
  std::mt19937_64 rng(1234);
  bool mask_ok = true;
  for (int c = 0; c < 3000; ++c) {
    const Model m = cogdist::testing::random_model(rng, cogdist::testing::small_vocab(), 60, 5);
    const TokenizedText tok =
        tokenize(cogdist::testing::random_text(rng, cogdist::testing::small_vocab(), 50));
    for (Backend be : {Backend::kNaive, Backend::kKernel}) {
      const auto e = make_recognizer(m, be);
      std::vector<int> claimed(tok.tokens.size(), 0);
      for (const AcceptedMatch& am : e->match(tok, SentenceMode::kBlocked, true)) {
        for (std::uint32_t k = am.begin; k < am.begin + am.order; ++k) {
          if (claimed[k]++) mask_ok = false;
        }
      }
    }
  }
  if (!mask_ok) note("mask non-overlap");
  return failed;
}

Outcome invariant_suites() {
  const std::string failed = invariant_failures();
  return verdict(failed.empty(), failed.empty()
                                     ? "IT monotonicity, MR identity, TF-IDF log base, DT "
                                       "monotonicity, LS ranking, mask non-overlap"
                                     : "failed: " + failed);
}

Outcome latency() {
  auto [corpus, source] = timing_corpus();
  LearningConfig learn;  // NM=2, FCR, IT=0
  const Model model = build_model(collect_stats(corpus, learn.max_order), learn);
  const auto engine = make_recognizer(model, Backend::kKernel);
  RecognitionConfig cfg;
  const auto start = std::chrono::steady_clock::now();
  std::size_t detected = 0;
  for (const LabeledText& t : corpus) {
    const RecognitionResult r = engine->recognize(tokenize(t.text), cfg);
    detected += static_cast<std::size_t>(std::count(r.decisions.begin(), r.decisions.end(), true));
  }
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  const double per_text = elapsed.count() / static_cast<double>(corpus.size());
  return verdict(per_text <= kLatencyBudgetMs,
                 fmt("%.4f", per_text) + " ms/text over " + std::to_string(corpus.size()) +
                     " texts, single thread, corpus=" + source + " (budget 11 ms), " +
                     std::to_string(detected) + " detections");
}

Outcome full_grid() {
  auto [corpus, source] = timing_corpus();
  const GridAxes axes = GridAxes::full();
  const auto start = std::chrono::steady_clock::now();
  const auto cells = grid_search(corpus, axes);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  const GridCell* best = best_cell(cells, true);
  return verdict(elapsed.count() <= kGridBudgetSeconds && cells.size() == axes.size(),
                 std::to_string(cells.size()) + " cells x 3 runs in " +
                     fmt("%.1f", elapsed.count()) + " s, corpus=" + source +
                     " (budget 14400 s), best weighted macro-F1 " +
                     fmt("%.4f", best ? best->report.mean_f1 : 0.0));
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"C1", "dataset1-weighted", dataset1_weighted},
      {"C2", "dataset1-unweighted", dataset1_unweighted},
      {"C3", "dataset2-reproduction", dataset2_reproduction},
      {"C4", "hyperparameter-ordering", hyperparameter_ordering},
      {"C5", "backend-equivalence", backend_equivalence},
      {"C6", "priority-on-order", priority_fixture},
      {"C7", "invariant-suites", invariant_suites},
      {"C8", "latency", latency},
      {"C9", "full-grid-runtime", full_grid},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0, passed = 0;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("error: ") + e.what());
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kFail ? "FAIL" : "SKIP";
    std::printf("[%s] %s %s: %s\n", tag, c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (o.status == Status::kPass) ++passed;
    if (o.status == Status::kFail) ++failed;
  }
  if (failed) return 1;
  return passed ? 0 : 77;
}
