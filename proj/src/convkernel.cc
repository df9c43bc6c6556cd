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

#include "cogdist/convkernel.h"

#include <algorithm>

#include "cogdist/simd/kernels.h"

namespace cogdist {

std::int32_t TokenVocabulary::add(std::string_view token) {
  const auto [it, inserted] =
      ids_.try_emplace(std::string(token), static_cast<std::int32_t>(tokens_.size()));
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

std::int32_t TokenVocabulary::id(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnknownToken : it->second;
}

OneHotText encode(const TokenizedText& text, const TokenVocabulary& vocab) {
  OneHotText out;
  out.ids.reserve(text.tokens.size());
  for (const Token& t : text.tokens) out.ids.push_back(vocab.id(t.text));
  return out;
}

std::vector<std::int32_t> reversed_kernel(const NGram& g, const TokenVocabulary& vocab) {
  std::vector<std::int32_t> taps;
  for (const std::string& t : g.tokens()) taps.push_back(vocab.id(t));
  std::reverse(taps.begin(), taps.end());
  return taps;
}

std::vector<std::int32_t> correlate(const OneHotText& text,
                                    std::span<const std::int32_t> reversed) {
  if (reversed.empty() || reversed.size() > text.length()) return {};
  std::vector<std::int32_t> y(text.length() - reversed.size() + 1);
  simd::active_kernels().convolve(text.ids, reversed, y);
  return y;
}

std::vector<std::uint8_t> match_indicators(std::span<const std::int32_t> y, std::size_t n) {
  std::vector<std::uint8_t> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] == static_cast<std::int32_t>(n) ? 1 : 0;
  }
  return out;
}

std::vector<std::uint8_t> combine_indicators(std::span<const std::vector<std::uint8_t>> rows) {
  if (rows.empty()) return {};
  std::vector<std::uint8_t> out(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < out.size() && i < row.size(); ++i) {
      out[i] = std::max(out[i], row[i]);
    }
  }
  return out;
}

KernelBank::KernelBank(const std::vector<ModelEntry>& entries) {
  std::size_t max_order = 0;
  for (const ModelEntry& e : entries) {
    for (const std::string& t : e.ngram.tokens()) vocab_.add(t);
    max_order = std::max(max_order, e.ngram.order());
  }
  buckets_.resize(max_order);
  for (std::size_t n = 1; n <= max_order; ++n) buckets_[n - 1].order = n;

  for (std::uint32_t idx = 0; idx < entries.size(); ++idx) {
    const NGram& g = entries[idx].ngram;
    KernelBucket& b = buckets_[g.order() - 1];
    const auto taps = reversed_kernel(g, vocab_);
    b.taps.insert(b.taps.end(), taps.begin(), taps.end());
    b.entries.push_back(idx);
  }

  const std::size_t v = vocab_.size();
  for (KernelBucket& b : buckets_) {
    b.offsets.assign(v + 1, 0);
    for (std::size_t k = 0; k < b.size(); ++k) {
      const std::int32_t first = b.kernel(k).back();
      ++b.offsets[static_cast<std::size_t>(first) + 1];
    }
    for (std::size_t t = 0; t < v; ++t) b.offsets[t + 1] += b.offsets[t];
    b.by_first.resize(b.size());
    std::vector<std::uint32_t> fill(b.offsets.begin(), b.offsets.end() - 1);
    for (std::size_t k = 0; k < b.size(); ++k) {
      const auto first = static_cast<std::size_t>(b.kernel(k).back());
      b.by_first[fill[first]++] = static_cast<std::uint32_t>(k);
    }
  }
}

std::vector<FullMatch> KernelBank::scan(const OneHotText& text) const {
  std::vector<FullMatch> out;
  const std::size_t l = text.length();
  if (l == 0 || buckets_.empty()) return out;

  std::vector<std::int32_t> present;
  for (std::int32_t id : text.ids) {
    if (id != kUnknownToken) present.push_back(id);
  }
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  if (present.empty()) return out;

  const simd::KernelTable& k = simd::active_kernels();
  std::vector<std::uint32_t> positions(l);
  for (std::size_t n = std::min(max_order(), l); n >= 1; --n) {
    const KernelBucket& b = bucket(n);
    const std::size_t first_of_length = out.size();
    for (std::int32_t id : present) {
      const auto t = static_cast<std::size_t>(id);
      for (std::uint32_t c = b.offsets[t]; c < b.offsets[t + 1]; ++c) {
        const std::uint32_t kernel = b.by_first[c];
        const std::size_t hits = k.full_matches(text.ids, b.kernel(kernel), positions);
        for (std::size_t h = 0; h < hits; ++h) {
          out.push_back({positions[h], static_cast<std::uint32_t>(n), b.entries[kernel]});
        }
      }
    }
    // Distinct kernels of one length never match at the same position.
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first_of_length), out.end(),
              [](const FullMatch& a, const FullMatch& b) { return a.begin < b.begin; });
  }
  return out;
}

KernelCounts accumulate(std::span<const FullMatch> matches,
                        const std::vector<ModelEntry>& entries,
                        std::size_t num_dictionaries, std::size_t length,
                        std::span<const std::uint32_t> sentence, bool weighted,
                        bool masking) {
  KernelCounts out;
  out.counts.assign(num_dictionaries, 0.0);
  std::vector<std::uint8_t> mask(length, 1);
  for (const FullMatch& m : matches) {
    const std::size_t end = m.begin + m.order;
    if (!sentence.empty() && sentence[m.begin] != sentence[end - 1]) continue;
    if (masking) {
      bool free = true;
      for (std::size_t p = m.begin; p < end && free; ++p) free = mask[p] == 1;
      if (!free) continue;
      std::fill(mask.begin() + m.begin, mask.begin() + static_cast<std::ptrdiff_t>(end), 0);
    }
    for (const Owner& o : entries[m.entry].owners) {
      out.counts[o.dictionary] += m.order * (weighted ? o.weight : 1.0);
    }
    out.accepted.push_back({m.begin, m.order, m.entry});
  }
  return out;
}

KernelRecognizer::KernelRecognizer(const Model& model)
    : Recognizer(model), bank_(entries()) {}

std::vector<AcceptedMatch> KernelRecognizer::match(const TokenizedText& text,
                                                   SentenceMode mode, bool masking) const {
  const OneHotText x = encode(text, bank_.vocabulary());
  const std::vector<FullMatch> matches = bank_.scan(x);
  std::vector<std::uint32_t> sentence;
  if (mode == SentenceMode::kBlocked) sentence = text.sentence_ids();
  return accumulate(matches, entries(), labels().size(), text.length(), sentence,
                    /*weighted=*/true, masking)
      .accepted;
}

}  // namespace cogdist
