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

#ifndef COGDIST_EVALUATION_H_
#define COGDIST_EVALUATION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cogdist/corpus.h"
#include "cogdist/labels.h"
#include "cogdist/learning.h"
#include "cogdist/recognizer.h"

namespace cogdist {

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  double precision() const;  // 0 when nothing was predicted
  double recall() const;     // 0 when there are no positives
  double f1() const;         // 2TP / (2TP + FP + FN), 0 on empty denominator
  void add(bool truth, bool predicted);

  bool operator==(const Confusion&) const = default;
};

// One-vs-rest confusion for each canonical distortion over one test split,
// plus the any-distortion (binary) confusion.
struct SplitScore {
  std::array<Confusion, kNumDistortions> per_label{};
  Confusion binary;

  double macro_f1() const;  // unweighted mean over all ten labels
  double binary_f1() const { return binary.f1(); }
  void add(const LabelSet& truth, const LabelSet& predicted);

  bool operator==(const SplitScore&) const = default;
};

SplitScore score_predictions(std::span<const LabelSet> truth,
                             std::span<const LabelSet> predicted);

// Canonical distortion of each model label; labels that match none of the
// ten classes map to nullopt and never produce predictions.
std::vector<std::optional<Distortion>> canonical_mapping(const std::vector<std::string>& labels);

LabelSet predicted_labels(std::span<const double> scores,
                          const std::vector<std::optional<Distortion>>& mapping,
                          int detection_threshold);

SplitScore score_split(const Recognizer& engine, std::span<const LabeledText> test,
                       const RecognitionConfig& cfg);

// Largest relative deviation of a run from the mean, in percent.
double max_percentage_error(std::span<const double> values);

struct EvalReport {
  std::vector<SplitScore> runs;
  double mean_f1 = 0.0;
  double min_f1 = 0.0;
  double max_f1 = 0.0;
  double mpe = 0.0;
  std::array<double, kNumDistortions> label_f1{};  // per-label F1, run mean
  double binary_f1 = 0.0;                          // run mean

  std::vector<double> run_f1() const;
};

EvalReport aggregate(std::vector<SplitScore> runs);

// Three runs on the every-fifth-record splits: train on 80 %, score 20 %.
EvalReport run_protocol(const std::vector<LabeledText>& corpus, const LearningConfig& learn,
                        const RecognitionConfig& rec, Backend backend = Backend::kKernel);

struct GridAxes {
  std::vector<int> orders;
  std::vector<SelectionMetric> metrics;
  std::vector<int> inclusion;
  std::vector<int> detection;
  std::vector<bool> weighted;

  // NM 1..5, all nine metrics, IT 0..90, DT 10..90, both modes.
  static GridAxes full();
  void validate() const;
  std::size_t size() const;
};

struct GridCell {
  int max_order = 0;
  SelectionMetric metric = SelectionMetric::kFCR;
  int inclusion_threshold = 0;
  int detection_threshold = 0;
  bool weighted = false;
  EvalReport report;
};

struct GridOptions {
  Backend backend = Backend::kKernel;
  unsigned threads = 0;  // 0 = hardware concurrency
  bool log_scaling = true;
  SentenceMode sentence_mode = SentenceMode::kBlocked;
};

// Every (NM, SM, IT) model is trained once per split; recognition scores are
// computed once per test text and thresholded at every DT. Cells are sorted
// by descending mean macro-F1; ties keep axis order.
std::vector<GridCell> grid_search(const std::vector<LabeledText>& corpus, const GridAxes& axes,
                                  const GridOptions& options = {});

// Best cell for one weighting mode, if present.
const GridCell* best_cell(const std::vector<GridCell>& cells, bool weighted);

}  // namespace cogdist

#endif  // COGDIST_EVALUATION_H_
