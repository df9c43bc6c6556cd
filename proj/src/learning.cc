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

#include "cogdist/learning.h"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cogdist {

std::string_view metric_name(SelectionMetric m) {
  switch (m) {
    case SelectionMetric::kF: return "F";
    case SelectionMetric::kUF: return "UF";
    case SelectionMetric::kFN: return "FN";
    case SelectionMetric::kUFN: return "UFN";
    case SelectionMetric::kTFIDF: return "TFIDF";
    case SelectionMetric::kFCR: return "FCR";
    case SelectionMetric::kCFR: return "CFR";
    case SelectionMetric::kMR: return "MR";
    case SelectionMetric::kNLMI: return "NLMI";
  }
  return "?";
}

std::optional<SelectionMetric> parse_metric(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (SelectionMetric m : kAllMetrics) {
    if (metric_name(m) == key) return m;
  }
  return std::nullopt;
}

void LearningConfig::validate() const {
  if (max_order < 1 || max_order > kMaxLearningOrder) {
    throw LearningError("NM must be in 1..5, got " + std::to_string(max_order));
  }
  if (inclusion_threshold < 0 || inclusion_threshold >= 100) {
    throw LearningError("IT must be in 0..99, got " + std::to_string(inclusion_threshold));
  }
  if (!(tfidf_log_base > 0.0) || tfidf_log_base == 1.0) {
    throw LearningError("TF-IDF log base must be positive and not 1");
  }
}

std::optional<NGramId> CorpusStats::find(std::string_view key) const {
  const auto it = ids_.find(std::string(key));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t CorpusStats::num_distortions() const {
  return static_cast<std::size_t>(
      std::count_if(d_freq_.begin(), d_freq_.end(), [](auto n) { return n > 0; }));
}

std::size_t CorpusStats::distortions_of(NGramId g) const {
  std::size_t n = 0;
  for (std::size_t d = 0; d < kNumDistortions; ++d) {
    if (uf_[g * kNumDistortions + d] > 0) ++n;
  }
  return n;
}

class StatsBuilder {
 public:
  StatsBuilder(int max_order, bool cross_sentence) : cross_sentence_(cross_sentence) {
    stats_.max_order_ = max_order;
  }

  void add(const TokenizedText& text, const LabelSet& labels) {
    const std::size_t text_index = stats_.num_texts_++;
    const std::vector<Distortion> members = labels.members();
    for (Distortion d : members) ++stats_.d_freq_[index_of(d)];

    auto enumerate = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        std::string key;
        for (int n = 1; n <= stats_.max_order_ && i + n <= end; ++n) {
          if (n > 1) key.push_back(' ');
          key.append(text.tokens[i + n - 1].text);
          count(key, static_cast<std::size_t>(n), text_index, members);
        }
      }
    };
    if (cross_sentence_) {
      enumerate(0, text.tokens.size());
    } else {
      for (const TokenRange& s : text.sentences) enumerate(s.begin, s.end);
    }
  }

  CorpusStats finish() {
    auto& s = stats_;
    s.uf_by_ngram_.assign(s.keys_.size(), 0);
    for (std::size_t g = 0; g < s.keys_.size(); ++g) {
      for (std::size_t d = 0; d < kNumDistortions; ++d) {
        const std::size_t c = g * kNumDistortions + d;
        s.uf_by_ngram_[g] += s.uf_[c];
        s.uf_by_label_[d] += s.uf_[c];
        s.g_total_[d] += s.f_[c];
      }
    }
    return std::move(stats_);
  }

 private:
  void count(const std::string& key, std::size_t order, std::size_t text_index,
             const std::vector<Distortion>& members) {
    auto& s = stats_;
    auto [it, inserted] = s.ids_.try_emplace(key, static_cast<NGramId>(s.keys_.size()));
    const NGramId id = it->second;
    if (inserted) {
      s.keys_.push_back(key);
      s.orders_.push_back(static_cast<std::uint8_t>(order));
      s.g_.push_back(0);
      s.ug_.push_back(0);
      s.f_.resize(s.f_.size() + kNumDistortions, 0);
      s.uf_.resize(s.uf_.size() + kNumDistortions, 0);
      last_text_.push_back(kNone);
    }
    const bool first_in_text = last_text_[id] != text_index;
    last_text_[id] = text_index;
    ++s.g_[id];
    if (first_in_text) ++s.ug_[id];
    for (Distortion d : members) {
      const std::size_t c = id * kNumDistortions + index_of(d);
      ++s.f_[c];
      if (first_in_text) ++s.uf_[c];
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  bool cross_sentence_;
  CorpusStats stats_;
  std::vector<std::size_t> last_text_;
};

CorpusStats collect_stats(std::span<const TokenizedText> texts,
                          std::span<const LabelSet> labels, int max_order,
                          bool cross_sentence) {
  if (max_order < 1 || max_order > kMaxLearningOrder) {
    throw LearningError("NM must be in 1..5, got " + std::to_string(max_order));
  }
  if (texts.size() != labels.size()) throw LearningError("texts/labels size mismatch");
  if (texts.empty()) throw LearningError("training corpus is empty");
  StatsBuilder builder(max_order, cross_sentence);
  for (std::size_t i = 0; i < texts.size(); ++i) builder.add(texts[i], labels[i]);
  return builder.finish();
}

CorpusStats collect_stats(std::span<const LabeledText> train, int max_order,
                          bool cross_sentence) {
  std::vector<TokenizedText> texts;
  std::vector<LabelSet> labels;
  texts.reserve(train.size());
  for (const LabeledText& t : train) {
    texts.push_back(tokenize(t.text));
    labels.push_back(t.labels);
  }
  return collect_stats(texts, labels, max_order, cross_sentence);
}

double score(const CorpusStats& stats, NGramId g, Distortion d,
             SelectionMetric metric, double log_base) {
  const double uf = static_cast<double>(stats.unique_frequency(g, d));
  const double f = static_cast<double>(stats.frequency(g, d));
  switch (metric) {
    case SelectionMetric::kF:
      return f;
    case SelectionMetric::kUF:
      return uf;
    case SelectionMetric::kFN:
      return f / static_cast<double>(stats.frequency(g));
    case SelectionMetric::kUFN:
      return uf / static_cast<double>(stats.unique_frequency(g));
    case SelectionMetric::kTFIDF: {
      const double fn = f / static_cast<double>(stats.frequency(g));
      const double ratio = static_cast<double>(stats.num_distortions()) /
                           static_cast<double>(stats.distortions_of(g));
      return fn * (std::log(ratio) / std::log(log_base));
    }
    case SelectionMetric::kFCR:
      return uf / static_cast<double>(stats.uf_over_distortions(g));
    case SelectionMetric::kCFR:
      return uf / static_cast<double>(stats.uf_over_ngrams(d));
    case SelectionMetric::kMR:
      return uf * uf /
             (static_cast<double>(stats.uf_over_distortions(g)) *
              static_cast<double>(stats.uf_over_ngrams(d)));
    case SelectionMetric::kNLMI:
      return uf * uf /
             (static_cast<double>(stats.texts_with(d)) *
              static_cast<double>(stats.unique_frequency(g)));
  }
  return 0.0;
}

RawScores compute_scores(const CorpusStats& stats, SelectionMetric metric,
                         double log_base) {
  RawScores out;
  out.metric = metric;
  for (NGramId g = 0; g < stats.num_ngrams(); ++g) {
    for (std::size_t di = 0; di < kNumDistortions; ++di) {
      const Distortion d = distortion_at(di);
      if (stats.unique_frequency(g, d) == 0) continue;
      out.by_label[di].emplace_back(g, score(stats, g, d, metric, log_base));
    }
  }
  return out;
}

Model build_model(const CorpusStats& stats, const RawScores& scores,
                  const LearningConfig& cfg) {
  cfg.validate();
  const double cutoff = cfg.inclusion_threshold / 100.0;

  double global_max = 0.0;
  for (const auto& list : scores.by_label) {
    for (const auto& [g, s] : list) global_max = std::max(global_max, s);
  }

  std::vector<DistortionDictionary> dicts;
  for (std::size_t di = 0; di < kNumDistortions; ++di) {
    DistortionDictionary dict;
    dict.label = std::string(kCanonicalLabels[di]);
    const auto& list = scores.by_label[di];
    double max = 0.0;
    if (cfg.normalization == Normalization::kGlobal) {
      max = global_max;
    } else {
      for (const auto& [g, s] : list) max = std::max(max, s);
    }
    if (max > 0.0) {
      for (const auto& [g, s] : list) {
        const double w = s / max;
        if (w > cutoff && w > 0.0) {
          dict.entries.emplace(NGram::from_trusted_key(stats.key(g), stats.order(g)), w);
        }
      }
    }
    dicts.push_back(std::move(dict));
  }
  ModelMetadata md;
  md.selection_metric = std::string(metric_name(cfg.metric));
  md.inclusion_threshold = cfg.inclusion_threshold;
  md.created_by = "cogdist train";
  return Model(std::move(dicts), std::move(md));
}

Model build_model(const CorpusStats& stats, const LearningConfig& cfg) {
  cfg.validate();
  if (stats.max_order() != cfg.max_order) {
    throw LearningError("statistics were collected with NM=" +
                        std::to_string(stats.max_order()) + ", config asks for NM=" +
                        std::to_string(cfg.max_order));
  }
  return build_model(stats, compute_scores(stats, cfg.metric, cfg.tfidf_log_base), cfg);
}

std::vector<std::string> empty_dictionaries(const Model& model) {
  std::vector<std::string> out;
  for (const auto& d : model.dictionaries()) {
    if (d.entries.empty()) out.push_back(d.label);
  }
  return out;
}

}  // namespace cogdist
