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

#include "cogdist/evaluation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cogdist {

double Confusion::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Confusion::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Confusion::f1() const {
  const std::uint64_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

void Confusion::add(bool truth, bool predicted) {
  if (truth && predicted) {
    ++tp;
  } else if (predicted) {
    ++fp;
  } else if (truth) {
    ++fn;
  } else {
    ++tn;
  }
}

double SplitScore::macro_f1() const {
  double sum = 0.0;
  for (const Confusion& c : per_label) sum += c.f1();
  return sum / static_cast<double>(kNumDistortions);
}

void SplitScore::add(const LabelSet& truth, const LabelSet& predicted) {
  for (std::size_t i = 0; i < kNumDistortions; ++i) {
    per_label[i].add(truth.contains(distortion_at(i)), predicted.contains(distortion_at(i)));
  }
  binary.add(!truth.empty(), !predicted.empty());
}

SplitScore score_predictions(std::span<const LabelSet> truth,
                             std::span<const LabelSet> predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("truth/prediction count mismatch");
  }
  SplitScore s;
  for (std::size_t i = 0; i < truth.size(); ++i) s.add(truth[i], predicted[i]);
  return s;
}

std::vector<std::optional<Distortion>> canonical_mapping(const std::vector<std::string>& labels) {
  std::vector<std::optional<Distortion>> out;
  for (const auto& l : labels) out.push_back(canonicalize_label(l));
  return out;
}

LabelSet predicted_labels(std::span<const double> scores,
                          const std::vector<std::optional<Distortion>>& mapping,
                          int detection_threshold) {
  LabelSet out;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (mapping[j] && is_detected(scores[j], detection_threshold)) out.insert(*mapping[j]);
  }
  return out;
}

SplitScore score_split(const Recognizer& engine, std::span<const LabeledText> test,
                       const RecognitionConfig& cfg) {
  const auto mapping = canonical_mapping(engine.labels());
  SplitScore s;
  for (const LabeledText& t : test) {
    const RecognitionResult r = engine.recognize(tokenize(t.text), cfg);
    s.add(t.labels, predicted_labels(r.scores, mapping, cfg.detection_threshold));
  }
  return s;
}

double max_percentage_error(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  if (mean == 0.0) return 0.0;
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - mean));
  return worst / mean * 100.0;
}

std::vector<double> EvalReport::run_f1() const {
  std::vector<double> out;
  for (const auto& r : runs) out.push_back(r.macro_f1());
  return out;
}

EvalReport aggregate(std::vector<SplitScore> runs) {
  EvalReport rep;
  rep.runs = std::move(runs);
  if (rep.runs.empty()) return rep;
  const std::vector<double> f1 = rep.run_f1();
  const double n = static_cast<double>(f1.size());
  rep.mean_f1 = std::accumulate(f1.begin(), f1.end(), 0.0) / n;
  rep.min_f1 = *std::min_element(f1.begin(), f1.end());
  rep.max_f1 = *std::max_element(f1.begin(), f1.end());
  rep.mpe = max_percentage_error(f1);
  for (const SplitScore& s : rep.runs) {
    for (std::size_t i = 0; i < kNumDistortions; ++i) rep.label_f1[i] += s.per_label[i].f1() / n;
    rep.binary_f1 += s.binary_f1() / n;
  }
  return rep;
}

namespace {

struct PreparedSplit {
  std::vector<TokenizedText> train_texts;
  std::vector<LabelSet> train_labels;
  std::vector<TokenizedText> test_texts;
  std::vector<LabelSet> test_labels;
};

std::vector<PreparedSplit> prepare_splits(const std::vector<LabeledText>& corpus) {
  std::vector<TokenizedText> all;
  all.reserve(corpus.size());
  for (const auto& t : corpus) all.push_back(tokenize(t.text));
  std::vector<PreparedSplit> out;
  for (const SplitPlan& plan : make_splits(corpus)) {
    PreparedSplit s;
    for (std::size_t i : plan.train_indices) {
      s.train_texts.push_back(all[i]);
      s.train_labels.push_back(corpus[i].labels);
    }
    for (std::size_t i : plan.test_indices) {
      s.test_texts.push_back(all[i]);
      s.test_labels.push_back(corpus[i].labels);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

EvalReport run_protocol(const std::vector<LabeledText>& corpus, const LearningConfig& learn,
                        const RecognitionConfig& rec, Backend backend) {
  learn.validate();
  rec.validate();
  std::vector<SplitScore> runs;
  for (const PreparedSplit& s : prepare_splits(corpus)) {
    const CorpusStats stats = collect_stats(s.train_texts, s.train_labels, learn.max_order,
                                            learn.cross_sentence_ngrams);
    const Model model = build_model(stats, learn);
    const auto engine = make_recognizer(model, backend);
    const auto mapping = canonical_mapping(engine->labels());
    SplitScore score;
    for (std::size_t i = 0; i < s.test_texts.size(); ++i) {
      const RecognitionResult r = engine->recognize(s.test_texts[i], rec);
      score.add(s.test_labels[i], predicted_labels(r.scores, mapping, rec.detection_threshold));
    }
    runs.push_back(score);
  }
  return aggregate(std::move(runs));
}

GridAxes GridAxes::full() {
  GridAxes a;
  a.orders = {1, 2, 3, 4, 5};
  a.metrics.assign(kAllMetrics.begin(), kAllMetrics.end());
  for (int it = 0; it <= 90; it += 10) a.inclusion.push_back(it);
  for (int dt = 10; dt <= 90; dt += 10) a.detection.push_back(dt);
  a.weighted = {false, true};
  return a;
}

void GridAxes::validate() const {
  if (orders.empty() || metrics.empty() || inclusion.empty() || detection.empty() ||
      weighted.empty()) {
    throw std::invalid_argument("grid axes must not be empty");
  }
  for (int nm : orders) {
    if (nm < 1 || nm > kMaxLearningOrder) throw std::invalid_argument("NM outside 1..5");
  }
  for (int it : inclusion) {
    if (it < 0 || it > 90 || it % 10 != 0) throw std::invalid_argument("IT outside {0,10,...,90}");
  }
  for (int dt : detection) {
    if (dt < 10 || dt > 90 || dt % 10 != 0) throw std::invalid_argument("DT outside {10,...,90}");
  }
}

std::size_t GridAxes::size() const {
  return orders.size() * metrics.size() * inclusion.size() * detection.size() * weighted.size();
}

std::vector<GridCell> grid_search(const std::vector<LabeledText>& corpus, const GridAxes& axes,
                                  const GridOptions& options) {
  axes.validate();
  const std::vector<PreparedSplit> splits = prepare_splits(corpus);
  const std::size_t runs = splits.size();
  const std::size_t n_sm = axes.metrics.size();
  const std::size_t n_it = axes.inclusion.size();
  const std::size_t n_dt = axes.detection.size();
  const std::size_t n_mode = axes.weighted.size();

  // table[((((nm * n_sm + sm) * n_it + it) * n_mode + mode) * n_dt + dt) * runs + run]
  std::vector<SplitScore> table(axes.size() * runs);
  auto slot = [&](std::size_t nm, std::size_t sm, std::size_t it, std::size_t mode,
                  std::size_t dt, std::size_t run) -> SplitScore& {
    return table[((((nm * n_sm + sm) * n_it + it) * n_mode + mode) * n_dt + dt) * runs + run];
  };

  for (std::size_t nm = 0; nm < axes.orders.size(); ++nm) {
    std::vector<CorpusStats> stats(runs);
    parallel_for(runs, options.threads, [&](std::size_t run) {
      stats[run] = collect_stats(splits[run].train_texts, splits[run].train_labels,
                                 axes.orders[nm]);
    });
    parallel_for(runs * n_sm, options.threads, [&](std::size_t task) {
      const std::size_t run = task / n_sm;
      const std::size_t sm = task % n_sm;
      const PreparedSplit& split = splits[run];
      const RawScores raw = compute_scores(stats[run], axes.metrics[sm]);
      for (std::size_t it = 0; it < n_it; ++it) {
        LearningConfig cfg;
        cfg.max_order = axes.orders[nm];
        cfg.metric = axes.metrics[sm];
        cfg.inclusion_threshold = axes.inclusion[it];
        const Model model = build_model(stats[run], raw, cfg);
        const auto engine = make_recognizer(model, options.backend);
        const auto mapping = canonical_mapping(engine->labels());
        std::vector<double> scores(mapping.size());
        for (std::size_t t = 0; t < split.test_texts.size(); ++t) {
          const MatchCounts counts = engine->count(split.test_texts[t], options.sentence_mode);
          for (std::size_t mode = 0; mode < n_mode; ++mode) {
            const auto& c = axes.weighted[mode] ? counts.weighted : counts.unweighted;
            for (std::size_t j = 0; j < c.size(); ++j) {
              scores[j] = normalize_count(c[j], counts.length, options.log_scaling);
            }
            for (std::size_t dt = 0; dt < n_dt; ++dt) {
              slot(nm, sm, it, mode, dt, run)
                  .add(split.test_labels[t],
                       predicted_labels(scores, mapping, axes.detection[dt]));
            }
          }
        }
      }
    });
  }

  std::vector<GridCell> cells;
  cells.reserve(axes.size());
  for (std::size_t nm = 0; nm < axes.orders.size(); ++nm) {
    for (std::size_t sm = 0; sm < n_sm; ++sm) {
      for (std::size_t it = 0; it < n_it; ++it) {
        for (std::size_t mode = 0; mode < n_mode; ++mode) {
          for (std::size_t dt = 0; dt < n_dt; ++dt) {
            std::vector<SplitScore> per_run;
            for (std::size_t run = 0; run < runs; ++run) {
              per_run.push_back(slot(nm, sm, it, mode, dt, run));
            }
            cells.push_back({axes.orders[nm], axes.metrics[sm], axes.inclusion[it],
                             axes.detection[dt], axes.weighted[mode],
                             aggregate(std::move(per_run))});
          }
        }
      }
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const GridCell& a, const GridCell& b) {
    return a.report.mean_f1 > b.report.mean_f1;
  });
  return cells;
}

const GridCell* best_cell(const std::vector<GridCell>& cells, bool weighted) {
  const GridCell* best = nullptr;
  for (const GridCell& c : cells) {
    if (c.weighted == weighted && (!best || c.report.mean_f1 > best->report.mean_f1)) best = &c;
  }
  return best;
}

}  // namespace cogdist
