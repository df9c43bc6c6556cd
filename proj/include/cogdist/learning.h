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

#ifndef COGDIST_LEARNING_H_
#define COGDIST_LEARNING_H_

#include <array>
#include <numbers>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cogdist/corpus.h"
#include "cogdist/labels.h"
#include "cogdist/model.h"
#include "cogdist/textprep.h"

namespace cogdist {

class LearningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SelectionMetric { kF, kUF, kFN, kUFN, kTFIDF, kFCR, kCFR, kMR, kNLMI };

inline constexpr std::array<SelectionMetric, 9> kAllMetrics = {
    SelectionMetric::kF,     SelectionMetric::kUF,  SelectionMetric::kFN,
    SelectionMetric::kUFN,   SelectionMetric::kTFIDF, SelectionMetric::kFCR,
    SelectionMetric::kCFR,   SelectionMetric::kMR,  SelectionMetric::kNLMI};

std::string_view metric_name(SelectionMetric m);
// Case-insensitive; "TF-IDF" and "TFIDF" are both accepted.
std::optional<SelectionMetric> parse_metric(std::string_view name);

enum class Normalization {
  kPerDistortion,  // divide by the maximum score of the same distortion
  kGlobal,         // divide by the maximum over all distortions
};

inline constexpr int kMaxLearningOrder = 5;

struct LearningConfig {
  int max_order = 2;                              // NM, 1..5
  SelectionMetric metric = SelectionMetric::kFCR;  // SM
  int inclusion_threshold = 0;                    // IT percent, 0..99
  Normalization normalization = Normalization::kPerDistortion;
  double tfidf_log_base = std::numbers::e;
  bool cross_sentence_ngrams = false;

  void validate() const;  // throws LearningError
};

using NGramId = std::uint32_t;

// Counts over a training corpus for every N-gram of order 1..NM. N-grams are
// interned; per-distortion counters are dense arrays of kNumDistortions.
class CorpusStats {
 public:
  std::size_t num_ngrams() const { return keys_.size(); }
  std::size_t num_texts() const { return num_texts_; }
  int max_order() const { return max_order_; }

  const std::string& key(NGramId id) const { return keys_[id]; }
  std::size_t order(NGramId id) const { return orders_[id]; }
  std::optional<NGramId> find(std::string_view key) const;

  // |D|: distortions with at least one labeled training text.
  std::size_t num_distortions() const;
  std::uint64_t texts_with(Distortion d) const { return d_freq_[index_of(d)]; }  // D_d
  std::uint64_t total_for(Distortion d) const { return g_total_[index_of(d)]; }  // G_d

  std::uint64_t frequency(NGramId g) const { return g_[g]; }          // G_g
  std::uint64_t unique_frequency(NGramId g) const { return ug_[g]; }  // UG_g
  std::uint64_t frequency(NGramId g, Distortion d) const { return f_[cell(g, d)]; }           // F_gd
  std::uint64_t unique_frequency(NGramId g, Distortion d) const { return uf_[cell(g, d)]; }  // UF_gd
  std::size_t distortions_of(NGramId g) const;  // D_g

  std::uint64_t uf_over_distortions(NGramId g) const { return uf_by_ngram_[g]; }  // sum_d UF_gd
  std::uint64_t uf_over_ngrams(Distortion d) const { return uf_by_label_[index_of(d)]; }  // sum_g UF_gd

 private:
  friend class StatsBuilder;
  std::size_t cell(NGramId g, Distortion d) const { return g * kNumDistortions + index_of(d); }

  int max_order_ = 0;
  std::size_t num_texts_ = 0;
  std::unordered_map<std::string, NGramId> ids_;
  std::vector<std::string> keys_;
  std::vector<std::uint8_t> orders_;
  std::vector<std::uint32_t> g_, ug_, f_, uf_;
  std::vector<std::uint64_t> uf_by_ngram_;
  std::array<std::uint64_t, kNumDistortions> d_freq_{};
  std::array<std::uint64_t, kNumDistortions> g_total_{};
  std::array<std::uint64_t, kNumDistortions> uf_by_label_{};
};

// Every N-gram of order 1..max_order is enumerated within sentences (or over
// the whole text when cross_sentence is set). A text contributes to each of
// its labels; unlabeled texts only feed G_g and UG_g.
CorpusStats collect_stats(std::span<const LabeledText> train, int max_order,
                          bool cross_sentence = false);
CorpusStats collect_stats(std::span<const TokenizedText> texts,
                          std::span<const LabelSet> labels, int max_order,
                          bool cross_sentence = false);

// Raw selection score of `g` for `d`. Requires UF_gd > 0 for some d.
double score(const CorpusStats& stats, NGramId g, Distortion d,
             SelectionMetric metric, double log_base = std::numbers::e);

// Raw scores of every (g, d) pair with UF_gd > 0, grouped by distortion.
struct RawScores {
  SelectionMetric metric = SelectionMetric::kFCR;
  std::array<std::vector<std::pair<NGramId, double>>, kNumDistortions> by_label;
};

RawScores compute_scores(const CorpusStats& stats, SelectionMetric metric,
                         double log_base = std::numbers::e);

// Normalizes, thresholds and emits one dictionary per canonical distortion
// (possibly empty). Entries need normalized score > IT/100.
Model build_model(const CorpusStats& stats, const RawScores& scores,
                  const LearningConfig& cfg);
Model build_model(const CorpusStats& stats, const LearningConfig& cfg);

// Labels whose dictionary came out empty in the last build are reported
// through this helper, so callers can warn.
std::vector<std::string> empty_dictionaries(const Model& model);

}  // namespace cogdist

#endif  // COGDIST_LEARNING_H_
