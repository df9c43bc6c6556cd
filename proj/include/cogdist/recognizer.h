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

#ifndef COGDIST_RECOGNIZER_H_
#define COGDIST_RECOGNIZER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cogdist/model.h"
#include "cogdist/textprep.h"

namespace cogdist {

class RecognitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SentenceMode {
  kBlocked,    // N-grams never span a sentence boundary
  kWholeText,  // the token stream is matched as one sequence
};

enum class Backend { kNaive, kKernel };

std::string_view backend_name(Backend b);
std::optional<Backend> parse_backend(std::string_view name);

inline constexpr int kDefaultDetectionThreshold = 50;

struct RecognitionConfig {
  int detection_threshold = kDefaultDetectionThreshold;  // DT percent, 0..100
  bool log_scaling = true;                               // LS
  bool weighted = true;                                  // false: every H = 1
  SentenceMode sentence_mode = SentenceMode::kBlocked;
  // When false, shorter N-grams inside accepted longer ones are counted too
  // (the plain sum over indicators, without priority on order).
  bool masking = true;

  void validate() const;  // throws RecognitionError
};

struct MatchSpan {
  std::size_t dictionary = 0;
  std::string label;
  NGram ngram;
  TokenRange tokens;
  CharSpan chars;
  double weight = 1.0;        // H as used (1 in unweighted mode)
  double contribution = 0.0;  // n * weight

  bool operator==(const MatchSpan&) const = default;
};

struct RecognitionResult {
  std::vector<std::string> labels;  // dictionary order of the model
  std::vector<double> raw_counts;   // C_j
  std::vector<double> scores;       // normalized, in [0, 1]
  std::vector<bool> decisions;
  std::vector<MatchSpan> matches;   // acceptance order
  std::size_t length = 0;           // l
};

// C_j / l, or 0.5 * log10(1 + 100 C_j / l) clamped to 1. Zero when l == 0.
double normalize_count(double count, std::size_t length, bool log_scaling);

// Strict: detected iff score > DT / 100.
bool is_detected(double score, int detection_threshold);
std::vector<bool> decide(const RecognitionResult& result, int detection_threshold);

// One accepted N-gram occurrence; `entry` indexes Recognizer::entries().
struct AcceptedMatch {
  std::uint32_t begin = 0;
  std::uint32_t order = 0;
  std::uint32_t entry = 0;

  bool operator==(const AcceptedMatch&) const = default;
};

struct Owner {
  std::uint32_t dictionary = 0;
  double weight = 1.0;
};

// A distinct N-gram of the model and every dictionary that contains it.
struct ModelEntry {
  NGram ngram;
  std::vector<Owner> owners;  // ascending dictionary index
};

// Counters from one matching pass, for both weighting modes at once.
struct MatchCounts {
  std::vector<double> weighted;
  std::vector<double> unweighted;
  std::size_t length = 0;
};

// Recognition engine compiled from a Model. Thread-safe: recognize may be
// called concurrently.
class Recognizer {
 public:
  explicit Recognizer(const Model& model);
  virtual ~Recognizer() = default;

  RecognitionResult recognize(const TokenizedText& text, const RecognitionConfig& cfg) const;
  MatchCounts count(const TokenizedText& text, SentenceMode mode, bool masking = true) const;

  // Accepted occurrences in priority order: longer N-grams first, then left
  // to right.
  virtual std::vector<AcceptedMatch> match(const TokenizedText& text, SentenceMode mode,
                                           bool masking) const = 0;
  virtual Backend backend() const = 0;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<ModelEntry>& entries() const { return entries_; }
  std::size_t max_order() const { return max_order_; }

 private:
  std::vector<std::string> labels_;
  std::vector<ModelEntry> entries_;  // sorted by key
  std::size_t max_order_ = 0;
};

// Priority-on-order matching with a hash lookup per window.
class NaiveRecognizer final : public Recognizer {
 public:
  explicit NaiveRecognizer(const Model& model);

  std::vector<AcceptedMatch> match(const TokenizedText& text, SentenceMode mode,
                                   bool masking) const override;
  Backend backend() const override { return Backend::kNaive; }

 private:
  std::unordered_map<std::string, std::uint32_t> index_;
};

std::unique_ptr<Recognizer> make_recognizer(const Model& model, Backend backend);

// Naive engine built on the fly.
RecognitionResult recognize(const TokenizedText& text, const Model& model,
                            const RecognitionConfig& cfg);

// Recognizes every text, splitting the batch over `threads` workers
// (0 = hardware concurrency). Output order matches input order.
std::vector<RecognitionResult> recognize_batch(const Recognizer& engine,
                                               std::span<const TokenizedText> texts,
                                               const RecognitionConfig& cfg,
                                               unsigned threads = 0);

// Runs fn(i) for i in [0, n) over a small pool of std::threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace cogdist

#endif  // COGDIST_RECOGNIZER_H_
