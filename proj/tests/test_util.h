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

#ifndef COGDIST_TESTS_TEST_UTIL_H_
#define COGDIST_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>

#include "cogdist/model.h"
#include "cogdist/textprep.h"

namespace cogdist::testing {

struct EntrySpec {
  std::string label;
  std::string ngram;  // space-joined
  double weight = 1.0;
};

inline Model make_model(std::initializer_list<EntrySpec> specs,
                        std::vector<std::string> labels = {}) {
  std::map<std::string, DistortionDictionary> by_label;
  for (const auto& l : labels) by_label[l].label = l;
  for (const auto& s : specs) {
    auto& d = by_label[s.label];
    d.label = s.label;
    d.entries[NGram::parse(s.ngram)] = s.weight;
  }
  std::vector<DistortionDictionary> dicts;
  for (auto& [l, d] : by_label) dicts.push_back(std::move(d));
  return Model(std::move(dicts));
}

// Fresh scratch directory under the build tree, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("cogdist_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Literal masked longest-first matcher over token strings. `sentence[i]` is the sentence of
// token i; an empty vector means no sentence blocking.
struct OracleMatch {
  std::size_t begin;
  std::size_t order;
  std::string key;
  bool operator==(const OracleMatch&) const = default;
  auto operator<=>(const OracleMatch&) const = default;
};

struct OracleResult {
  std::vector<double> counts;
  std::vector<OracleMatch> matches;
};

inline OracleResult oracle_algorithm1(const std::vector<std::string>& tokens,
                                      const std::vector<std::uint32_t>& sentence,
                                      const Model& model, bool weighted, bool masking = true) {
  const auto& dicts = model.dictionaries();
  OracleResult out;
  out.counts.assign(dicts.size(), 0.0);
  const std::size_t l = tokens.size();
  std::vector<int> mask(l, 1);
  for (std::size_t n = model.max_order(); n >= 1; --n) {
    for (std::size_t i = 0; i + n <= l; ++i) {
      bool open = true;
      for (std::size_t k = i; k < i + n; ++k) {
        if (masking && mask[k] == 0) open = false;
        if (!sentence.empty() && sentence[k] != sentence[i]) open = false;
      }
      if (!open) continue;
      std::string key = tokens[i];
      for (std::size_t k = i + 1; k < i + n; ++k) key += " " + tokens[k];
      bool found = false;
      for (std::size_t j = 0; j < dicts.size(); ++j) {
        for (const auto& [g, h] : dicts[j].entries) {
          if (g.key() == key) {
            out.counts[j] += static_cast<double>(n) * (weighted ? h : 1.0);
            found = true;
          }
        }
      }
      if (found) {
        out.matches.push_back({i, n, key});
        for (std::size_t k = i; k < i + n; ++k) mask[k] = 0;
      }
    }
  }
  return out;
}

inline std::vector<std::string> token_texts(const TokenizedText& t) {
  std::vector<std::string> out;
  for (const auto& tok : t.tokens) out.push_back(tok.text);
  return out;
}

// Random model over a small vocabulary so that matches are frequent.
inline Model random_model(std::mt19937_64& rng, const std::vector<std::string>& vocab,
                          std::size_t max_entries, std::size_t max_order,
                          std::size_t num_labels = 3) {
  std::vector<DistortionDictionary> dicts(num_labels);
  for (std::size_t j = 0; j < num_labels; ++j) dicts[j].label = "L" + std::to_string(j);
  std::uniform_int_distribution<std::size_t> n_entries(0, max_entries);
  std::uniform_int_distribution<std::size_t> order(1, max_order);
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<std::size_t> label(0, num_labels - 1);
  std::uniform_int_distribution<int> weight(1, 1000);
  const std::size_t count = n_entries(rng);
  for (std::size_t e = 0; e < count; ++e) {
    std::vector<std::string> toks(order(rng));
    for (auto& t : toks) t = vocab[word(rng)];
    dicts[label(rng)].entries[NGram::from_tokens(std::span<const std::string>(toks))] =
        weight(rng) / 1000.0;
  }
  return Model(std::move(dicts));
}

// Random text from `vocab`, with '!' sentence breaks.
inline std::string random_text(std::mt19937_64& rng, const std::vector<std::string>& vocab,
                               std::size_t max_tokens, double break_prob = 0.1) {
  std::uniform_int_distribution<std::size_t> len(0, max_tokens);
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::bernoulli_distribution brk(break_prob);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += brk(rng) ? "! " : " ";
    s += vocab[word(rng)];
  }
  return s;
}

inline const std::vector<std::string>& small_vocab() {
  static const std::vector<std::string> v = {"i", "am", "a", "bad", "thing", "not", "always",
                                             "never", "fail", "they", "think", "should"};
  return v;
}

}  // namespace cogdist::testing

#endif  // COGDIST_TESTS_TEST_UTIL_H_
