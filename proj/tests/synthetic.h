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

#ifndef COGDIST_TESTS_SYNTHETIC_H_
#define COGDIST_TESTS_SYNTHETIC_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cogdist/corpus.h"
#include "cogdist/labels.h"

namespace cogdist::testing {

struct SyntheticSpec {
  std::size_t texts = 2530;
  std::size_t mean_tokens = 120;
  std::size_t vocabulary = 4000;
  std::size_t cues_per_label = 40;
  double no_distortion_rate = 0.2;
  double secondary_rate = 0.25;
  std::uint64_t seed = 20240601;
};

// Deterministic labeled corpus: Zipfian background words plus label-specific
// cue phrases of one to three words, split into sentences.
inline std::vector<LabeledText> synthetic_corpus(const SyntheticSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  auto word = [](std::size_t i) {
    static const char* syl[] = {"ka", "lo", "mi", "ne", "ru", "sa", "to", "vi", "ze", "po"};
    std::string w;
    do {
      w += syl[i % 10];
      i /= 10;
    } while (i > 0);
    return w;
  };
  std::vector<double> zipf(spec.vocabulary);
  for (std::size_t i = 0; i < zipf.size(); ++i) zipf[i] = 1.0 / std::pow(i + 1.0, 1.07);
  std::discrete_distribution<std::size_t> background(zipf.begin(), zipf.end());

  std::uniform_int_distribution<std::size_t> cue_len(1, 3);
  std::uniform_int_distribution<std::size_t> cue_word(0, 400);
  std::vector<std::vector<std::string>> cues(kNumDistortions);
  for (auto& list : cues) {
    for (std::size_t c = 0; c < spec.cues_per_label; ++c) {
      std::string phrase;
      for (std::size_t k = cue_len(rng); k > 0; --k) {
        phrase += (phrase.empty() ? "" : " ") + word(cue_word(rng));
      }
      list.push_back(phrase);
    }
  }

  std::poisson_distribution<std::size_t> length(static_cast<double>(spec.mean_tokens));
  std::uniform_int_distribution<std::size_t> label(0, kNumDistortions - 1);
  std::bernoulli_distribution none(spec.no_distortion_rate);
  std::bernoulli_distribution second(spec.secondary_rate);
  std::uniform_int_distribution<std::size_t> sentence_len(6, 18);
  std::uniform_int_distribution<int> cue_count(1, 4);
  std::bernoulli_distribution stray(0.3);

  std::vector<LabeledText> out;
  for (std::size_t t = 0; t < spec.texts; ++t) {
    LabeledText rec;
    rec.id = t;
    if (!none(rng)) {
      rec.labels.insert(distortion_at(label(rng)));
      if (second(rng)) rec.labels.insert(distortion_at(label(rng)));
    }
    std::vector<std::string> words;
    const std::size_t target = std::max<std::size_t>(5, length(rng));
    while (words.size() < target) words.push_back(word(background(rng)));
    auto plant = [&](const std::string& phrase) {
      std::uniform_int_distribution<std::size_t> at(0, words.size());
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(at(rng)), phrase);
    };
    for (Distortion d : rec.labels.members()) {
      auto& list = cues[index_of(d)];
      std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
      for (int k = cue_count(rng); k > 0; --k) plant(list[pick(rng)]);
    }
    if (stray(rng)) {
      auto& list = cues[label(rng)];
      std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
      plant(list[pick(rng)]);
    }
    std::string text;
    std::size_t in_sentence = 0;
    std::size_t limit = sentence_len(rng);
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::string w = words[i];
      if (in_sentence == 0 && !w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
      text += (text.empty() ? "" : " ") + w;
      if (++in_sentence == limit || i + 1 == words.size()) {
        text += '.';
        in_sentence = 0;
        limit = sentence_len(rng);
      }
    }
    rec.text = std::move(text);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace cogdist::testing

#endif  // COGDIST_TESTS_SYNTHETIC_H_
