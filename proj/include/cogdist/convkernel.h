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

#ifndef COGDIST_CONVKERNEL_H_
#define COGDIST_CONVKERNEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cogdist/recognizer.h"

namespace cogdist {

// Recognition as convolution of a one-hot encoded text with reversed
// ("inverse") N-gram kernels. One-hot inner products are realized as token id
// comparisons; see simd/kernels.h for the inner loops.

inline constexpr std::int32_t kUnknownToken = -1;

// Dense token ids, contiguous from 0.
class TokenVocabulary {
 public:
  std::int32_t add(std::string_view token);
  // kUnknownToken for tokens outside the vocabulary.
  std::int32_t id(std::string_view token) const;
  const std::string& token(std::int32_t id) const { return tokens_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::unordered_map<std::string, std::int32_t> ids_;
  std::vector<std::string> tokens_;
};

// A text as its sequence of token ids: x_f has its single one at ids[f].
struct OneHotText {
  std::vector<std::int32_t> ids;

  std::size_t length() const { return ids.size(); }
};

OneHotText encode(const TokenizedText& text, const TokenVocabulary& vocab);

// Kernel taps h_{g,n}, ..., h_{g,1}: the N-gram's token ids in reverse.
std::vector<std::int32_t> reversed_kernel(const NGram& g, const TokenVocabulary& vocab);

// y_g(i) for every window; empty when the kernel is longer than the text.
std::vector<std::int32_t> correlate(const OneHotText& text, std::span<const std::int32_t> reversed);

// I_g(i) = [y_g(i) == n].
std::vector<std::uint8_t> match_indicators(std::span<const std::int32_t> y, std::size_t n);

// Elementwise max over indicator rows of equal length: I_{j,n} from the
// I_g of the N-grams of length n in dictionary j.
std::vector<std::uint8_t> combine_indicators(std::span<const std::vector<std::uint8_t>> rows);

// A full-length match of kernel entry `entry` at window `begin`.
struct FullMatch {
  std::uint32_t begin = 0;
  std::uint32_t order = 0;
  std::uint32_t entry = 0;
};

// Kernels of one length, with an index from first token to kernels.
struct KernelBucket {
  std::size_t order = 0;
  std::vector<std::int32_t> taps;       // kernel k at [k * order, (k + 1) * order)
  std::vector<std::uint32_t> entries;   // Recognizer entry of kernel k
  std::vector<std::uint32_t> offsets;   // CSR over first token id, size |V| + 1
  std::vector<std::uint32_t> by_first;  // kernel indices grouped by first token

  std::size_t size() const { return entries.size(); }
  std::span<const std::int32_t> kernel(std::size_t k) const {
    return {taps.data() + k * order, order};
  }
};

class KernelBank {
 public:
  KernelBank() = default;
  explicit KernelBank(const std::vector<ModelEntry>& entries);

  const TokenVocabulary& vocabulary() const { return vocab_; }
  std::size_t max_order() const { return buckets_.size(); }
  // Bucket for length n, 1 <= n <= max_order().
  const KernelBucket& bucket(std::size_t n) const { return buckets_[n - 1]; }

  // All full matches of every kernel against `text`, grouped by descending
  // length and ascending position. Kernels whose first token does not occur
  // in the text are skipped: their y_g never reaches n.
  std::vector<FullMatch> scan(const OneHotText& text) const;

 private:
  TokenVocabulary vocab_;
  std::vector<KernelBucket> buckets_;
};

struct KernelCounts {
  std::vector<double> counts;             // C_j
  std::vector<AcceptedMatch> accepted;    // matches that contributed
};

// Turns full matches (ordered as KernelBank::scan returns them) into C_j.
// With masking, a match is honored only when its whole window is still
// unclaimed, which reproduces priority on order; without it every
// indicator counts. `sentence` blocks cross-sentence windows when non-empty.
KernelCounts accumulate(std::span<const FullMatch> matches,
                        const std::vector<ModelEntry>& entries,
                        std::size_t num_dictionaries, std::size_t length,
                        std::span<const std::uint32_t> sentence, bool weighted,
                        bool masking);

class KernelRecognizer final : public Recognizer {
 public:
  explicit KernelRecognizer(const Model& model);

  std::vector<AcceptedMatch> match(const TokenizedText& text, SentenceMode mode,
                                   bool masking) const override;
  Backend backend() const override { return Backend::kKernel; }

  const KernelBank& bank() const { return bank_; }

 private:
  KernelBank bank_;
};

}  // namespace cogdist

#endif  // COGDIST_CONVKERNEL_H_
