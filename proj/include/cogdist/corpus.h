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

#ifndef COGDIST_CORPUS_H_
#define COGDIST_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogdist/labels.h"

namespace cogdist {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledText {
  std::size_t id = 0;  // position in the loaded corpus
  std::string text;
  LabelSet labels;  // empty = no distortion
  std::optional<std::string> distorted_part;

  bool operator==(const LabeledText&) const = default;
};

// Maps record roles to header names. `text` and `dominant` are required;
// the others may be left empty when a dataset lacks them.
struct ColumnMap {
  std::string text;
  std::string dominant;
  std::string secondary;
  std::string distorted_part;
  char delimiter = '\0';  // '\0' = sniff from the header row
};

// Parses "role = Header Name" lines; '#' starts a comment. Recognized keys:
// text, dominant, secondary, distorted_part, delimiter (comma|tab|,).
ColumnMap parse_column_map(std::string_view config);
ColumnMap load_column_map(const std::filesystem::path& path);

// One LabeledText per data row with non-blank text, in file order. Label
// cells may hold several labels separated by ';'.
std::vector<LabeledText> parse_dataset(std::string_view data, const ColumnMap& map);
std::vector<LabeledText> load_dataset(const std::filesystem::path& path,
                                      const ColumnMap& map);

// Deterministic every-fifth-record split.
struct SplitPlan {
  int shift = 0;
  std::vector<std::size_t> test_indices;   // index % 5 == shift
  std::vector<std::size_t> train_indices;  // the complement
};

inline constexpr int kNumRuns = 3;
inline constexpr std::size_t kSplitModulus = 5;

SplitPlan make_split(std::size_t corpus_size, int shift);

// Splits for shifts 0, 1, 2. Throws CorpusError for fewer than 5 records.
std::vector<SplitPlan> make_splits(std::size_t corpus_size);
std::vector<SplitPlan> make_splits(const std::vector<LabeledText>& corpus);

std::string read_file(const std::filesystem::path& path);

}  // namespace cogdist

#endif  // COGDIST_CORPUS_H_
