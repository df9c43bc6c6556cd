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

#ifndef COGDIST_MODEL_H_
#define COGDIST_MODEL_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cogdist {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownLabelError : public ModelError {
 public:
  using ModelError::ModelError;
};

class InvalidWeightError : public ModelError {
 public:
  using ModelError::ModelError;
};

// An ordered token sequence, stored as its space-joined form. Tokens never
// contain whitespace, so the joined string is an exact key.
class NGram {
 public:
  NGram() = default;

  // Throws ModelError if `tokens` is empty or any token is not a valid token.
  static NGram from_tokens(std::span<const std::string> tokens);
  static NGram from_tokens(std::span<const std::string_view> tokens);
  // Splits on single spaces; same validation as from_tokens.
  static NGram parse(std::string_view joined);
  // No validation: `key` must already be space-joined tokenizer output with
  // `order` tokens.
  static NGram from_trusted_key(std::string key, std::size_t order) {
    NGram g;
    g.key_ = std::move(key);
    g.order_ = order;
    return g;
  }

  const std::string& key() const { return key_; }
  std::size_t order() const { return order_; }
  std::vector<std::string> tokens() const;

  bool operator==(const NGram& o) const { return key_ == o.key_; }
  std::strong_ordering operator<=>(const NGram& o) const { return key_ <=> o.key_; }

 private:
  std::string key_;
  std::size_t order_ = 0;
};

struct NGramHash {
  std::size_t operator()(const NGram& g) const {
    return std::hash<std::string>{}(g.key());
  }
};

// Weights H in (0, 1].
struct DistortionDictionary {
  std::string label;
  std::unordered_map<NGram, double, NGramHash> entries;

  bool operator==(const DistortionDictionary&) const = default;
};

struct ModelMetadata {
  std::string selection_metric;      // empty for imported models
  std::optional<int> inclusion_threshold;
  std::string created_by;

  bool operator==(const ModelMetadata&) const = default;
};

inline constexpr double kMinSavedWeight = 1e-6;

// k weighted N-gram dictionaries. Containment between N-grams of different
// orders is not stored; recognition derives precedence from N-gram length.
// Immutable: editing returns a new Model.
class Model {
 public:
  Model() = default;
  // Throws ModelError on duplicate labels, empty labels or weights outside
  // (0, 1].
  explicit Model(std::vector<DistortionDictionary> dictionaries,
                 ModelMetadata metadata = {});

  const std::vector<DistortionDictionary>& dictionaries() const { return dictionaries_; }
  const ModelMetadata& metadata() const { return metadata_; }

  // Longest N-gram over all dictionaries (0 for an empty model).
  std::size_t max_order() const { return max_order_; }
  std::size_t entry_count() const;
  std::optional<std::size_t> find(std::string_view label) const;
  std::vector<std::string> labels() const;

  // Equal when the same labels own the same weighted entries; dictionary
  // order and entry insertion order are irrelevant.
  bool operator==(const Model& other) const;

 private:
  std::vector<DistortionDictionary> dictionaries_;
  ModelMetadata metadata_;
  std::size_t max_order_ = 0;
};

// Writes `<label>.tsv` per dictionary (lines "tokens<TAB>weight\n", sorted by
// descending weight then key) and `model.meta`. Stale .tsv files in `dir`
// are removed. Throws ModelError for weights below kMinSavedWeight.
void save_model(const Model& model, const std::filesystem::path& dir);

// Reads every `*.tsv` in `dir`. A line without a weight column gets weight
// 1.0. N-gram text is run through the tokenizer, so imported dictionaries
// with capitals or punctuation are normalized the way texts are.
Model load_model(const std::filesystem::path& dir);

// Weight text with at least six decimals that parses back to `weight`
// exactly.
std::string format_weight(double weight);

struct WeightedNGram {
  NGram ngram;
  double weight = 0;
  bool operator==(const WeightedNGram&) const = default;
};

struct Reweighted {
  NGram ngram;
  double before = 0;
  double after = 0;
  double delta() const { return after - before; }
};

struct DictionaryDiff {
  std::string label;
  std::vector<WeightedNGram> added;    // in b, not in a
  std::vector<WeightedNGram> removed;  // in a, not in b
  std::vector<Reweighted> reweighted;  // |delta| > 1e-9

  bool empty() const { return added.empty() && removed.empty() && reweighted.empty(); }
};

struct ModelDiff {
  std::vector<DictionaryDiff> dictionaries;  // sorted by label, non-empty only
  bool empty() const { return dictionaries.empty(); }
  std::size_t change_count() const;
};

inline constexpr double kReweightEpsilon = 1e-9;

// Throws ModelError when the two label sets differ.
ModelDiff diff_models(const Model& a, const Model& b);

struct EditOutcome {
  Model model;
  bool changed = false;               // false: deleting an absent entry
  std::optional<double> previous;     // weight before the edit, if present
};

// Sets (weight given) or deletes (nullopt) one entry. Throws
// UnknownLabelError or InvalidWeightError; `model` itself is never modified.
EditOutcome edit_entry(const Model& model, std::string_view label,
                       const NGram& ngram, std::optional<double> weight);

}  // namespace cogdist

#endif  // COGDIST_MODEL_H_
