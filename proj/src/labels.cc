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

#include "cogdist/labels.h"

#include <cctype>
#include <utility>

namespace cogdist {
namespace {

std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

// Spelling variants seen in label columns besides the canonical names.
constexpr std::pair<std::string_view, Distortion> kAliases[] = {
    {"labelling", Distortion::kLabeling},
    {"allornothing", Distortion::kAllOrNothingThinking},
    {"blackandwhitethinking", Distortion::kAllOrNothingThinking},
    {"overgeneralisation", Distortion::kOvergeneralization},
    {"personalisation", Distortion::kPersonalization},
    {"shouldstatement", Distortion::kShouldStatements},
    {"mindreader", Distortion::kMindReading},
};

constexpr std::string_view kNoDistortion[] = {"", "nodistortion", "none",
                                              "nan", "null"};

}  // namespace

std::vector<Distortion> LabelSet::members() const {
  std::vector<Distortion> out;
  for (std::size_t i = 0; i < kNumDistortions; ++i) {
    if (bits_.test(i)) out.push_back(distortion_at(i));
  }
  return out;
}

std::string LabelSet::to_string() const {
  std::string out;
  for (Distortion d : members()) {
    if (!out.empty()) out.push_back('|');
    out.append(label_name(d));
  }
  return out;
}

LabelMatch match_label(std::string_view raw) {
  const std::string key = squash(raw);
  for (std::string_view none : kNoDistortion) {
    if (key == none) return {true, std::nullopt};
  }
  for (std::size_t i = 0; i < kNumDistortions; ++i) {
    if (key == squash(kCanonicalLabels[i])) return {false, distortion_at(i)};
  }
  for (const auto& [alias, d] : kAliases) {
    if (key == alias) return {false, d};
  }
  return {};
}

std::optional<Distortion> canonicalize_label(std::string_view raw) {
  return match_label(raw).label;
}

}  // namespace cogdist
