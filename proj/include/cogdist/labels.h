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

#ifndef COGDIST_LABELS_H_
#define COGDIST_LABELS_H_

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cogdist {

// The ten canonical cognitive-distortion classes.
enum class Distortion : std::uint8_t {
  kAllOrNothingThinking = 0,
  kEmotionalReasoning,
  kFortuneTelling,
  kLabeling,
  kMagnification,
  kMentalFilter,
  kMindReading,
  kOvergeneralization,
  kPersonalization,
  kShouldStatements,
};

inline constexpr std::size_t kNumDistortions = 10;

inline constexpr std::array<std::string_view, kNumDistortions> kCanonicalLabels = {
    "All-or-nothing_thinking", "Emotional_Reasoning", "Fortune-telling",
    "Labeling",                "Magnification",       "Mental_filter",
    "Mind_Reading",            "Overgeneralization",  "Personalization",
    "Should_statements"};

inline constexpr std::size_t index_of(Distortion d) {
  return static_cast<std::size_t>(d);
}

inline constexpr std::string_view label_name(Distortion d) {
  return kCanonicalLabels[index_of(d)];
}

inline constexpr Distortion distortion_at(std::size_t i) {
  return static_cast<Distortion>(i);
}

// Set of canonical labels; duplicates collapse by construction.
class LabelSet {
 public:
  LabelSet() = default;

  void insert(Distortion d) { bits_.set(index_of(d)); }
  bool contains(Distortion d) const { return bits_.test(index_of(d)); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::vector<Distortion> members() const;
  std::string to_string() const;  // '|'-joined canonical names

  bool operator==(const LabelSet&) const = default;

 private:
  std::bitset<kNumDistortions> bits_;
};

// Result of matching a free-form label string against the canonical names.
struct LabelMatch {
  bool no_distortion = false;          // "No Distortion", "none", empty
  std::optional<Distortion> label;     // set when a canonical class matched
};

// Case, spacing and punctuation insensitive match: "Fortune telling",
// "fortune-telling" and "Fortune-telling" all map to kFortuneTelling.
// Returns a match with neither field set for unknown strings.
LabelMatch match_label(std::string_view raw);

// Canonical class for an exact or loosely matching name, if any.
std::optional<Distortion> canonicalize_label(std::string_view raw);

}  // namespace cogdist

#endif  // COGDIST_LABELS_H_
