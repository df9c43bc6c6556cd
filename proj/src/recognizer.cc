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

#include "cogdist/recognizer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "cogdist/convkernel.h"

namespace cogdist {

std::string_view backend_name(Backend b) {
  return b == Backend::kNaive ? "naive" : "kernel";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "naive") return Backend::kNaive;
  if (name == "kernel") return Backend::kKernel;
  return std::nullopt;
}

void RecognitionConfig::validate() const {
  if (detection_threshold < 0 || detection_threshold > 100) {
    throw RecognitionError("DT must be in 0..100, got " +
                           std::to_string(detection_threshold));
  }
}

double normalize_count(double count, std::size_t length, bool log_scaling) {
  if (length == 0) return 0.0;
  const double ratio = count / static_cast<double>(length);
  if (!log_scaling) return ratio;
  return std::min(1.0, 0.5 * std::log10(1.0 + 100.0 * ratio));
}

bool is_detected(double score, int detection_threshold) {
  return score > detection_threshold / 100.0;
}

std::vector<bool> decide(const RecognitionResult& result, int detection_threshold) {
  std::vector<bool> out;
  out.reserve(result.scores.size());
  for (double s : result.scores) out.push_back(is_detected(s, detection_threshold));
  return out;
}

Recognizer::Recognizer(const Model& model) : max_order_(model.max_order()) {
  std::map<std::string, ModelEntry> merged;
  const auto& dicts = model.dictionaries();
  for (std::uint32_t j = 0; j < dicts.size(); ++j) {
    labels_.push_back(dicts[j].label);
    for (const auto& [g, w] : dicts[j].entries) {
      auto& e = merged[g.key()];
      e.ngram = g;
      e.owners.push_back({j, w});
    }
  }
  entries_.reserve(merged.size());
  for (auto& [key, e] : merged) entries_.push_back(std::move(e));
}

MatchCounts Recognizer::count(const TokenizedText& text, SentenceMode mode,
                              bool masking) const {
  MatchCounts c;
  c.length = text.length();
  c.weighted.assign(labels_.size(), 0.0);
  c.unweighted.assign(labels_.size(), 0.0);
  for (const AcceptedMatch& m : match(text, mode, masking)) {
    for (const Owner& o : entries_[m.entry].owners) {
      c.weighted[o.dictionary] += m.order * o.weight;
      c.unweighted[o.dictionary] += m.order;
    }
  }
  return c;
}

RecognitionResult Recognizer::recognize(const TokenizedText& text,
                                        const RecognitionConfig& cfg) const {
  cfg.validate();
  RecognitionResult r;
  r.labels = labels_;
  r.length = text.length();
  r.raw_counts.assign(labels_.size(), 0.0);
  for (const AcceptedMatch& m : match(text, cfg.sentence_mode, cfg.masking)) {
    const ModelEntry& e = entries_[m.entry];
    const TokenRange tokens{m.begin, m.begin + m.order};
    const CharSpan chars{text.tokens[tokens.begin].span.start,
                         text.tokens[tokens.end - 1].span.end};
    for (const Owner& o : e.owners) {
      const double w = cfg.weighted ? o.weight : 1.0;
      const double contribution = m.order * w;
      r.raw_counts[o.dictionary] += contribution;
      r.matches.push_back({o.dictionary, labels_[o.dictionary], e.ngram, tokens, chars, w,
                           contribution});
    }
  }
  for (double c : r.raw_counts) r.scores.push_back(normalize_count(c, r.length, cfg.log_scaling));
  r.decisions = decide(r, cfg.detection_threshold);
  return r;
}

NaiveRecognizer::NaiveRecognizer(const Model& model) : Recognizer(model) {
  for (std::uint32_t i = 0; i < entries().size(); ++i) {
    index_.emplace(entries()[i].ngram.key(), i);
  }
}

std::vector<AcceptedMatch> NaiveRecognizer::match(const TokenizedText& text,
                                                  SentenceMode mode, bool masking) const {
  std::vector<AcceptedMatch> accepted;
  const std::size_t l = text.length();
  if (l == 0 || max_order() == 0) return accepted;
  const std::vector<std::uint32_t> sentence = text.sentence_ids();
  std::vector<std::uint8_t> mask(l, 1);
  std::string key;

  for (std::size_t n = std::min(max_order(), l); n >= 1; --n) {
    for (std::size_t i = 0; i + n <= l; ++i) {
      if (mode == SentenceMode::kBlocked && sentence[i] != sentence[i + n - 1]) continue;
      if (masking && !std::all_of(mask.begin() + i, mask.begin() + i + n,
                                  [](std::uint8_t m) { return m == 1; })) {
        continue;
      }
      key.clear();
      for (std::size_t t = i; t < i + n; ++t) {
        if (t > i) key.push_back(' ');
        key.append(text.tokens[t].text);
      }
      const auto it = index_.find(key);
      if (it == index_.end()) continue;
      accepted.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(n),
                          it->second});
      if (masking) std::fill(mask.begin() + i, mask.begin() + i + n, 0);
    }
  }
  return accepted;
}

std::unique_ptr<Recognizer> make_recognizer(const Model& model, Backend backend) {
  if (backend == Backend::kNaive) return std::make_unique<NaiveRecognizer>(model);
  return std::make_unique<KernelRecognizer>(model);
}

RecognitionResult recognize(const TokenizedText& text, const Model& model,
                            const RecognitionConfig& cfg) {
  return NaiveRecognizer(model).recognize(text, cfg);
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < n; i = next++) fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<RecognitionResult> recognize_batch(const Recognizer& engine,
                                               std::span<const TokenizedText> texts,
                                               const RecognitionConfig& cfg,
                                               unsigned threads) {
  std::vector<RecognitionResult> out(texts.size());
  parallel_for(texts.size(), threads,
               [&](std::size_t i) { out[i] = engine.recognize(texts[i], cfg); });
  return out;
}

}  // namespace cogdist
