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

#include "cogdist/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cogdist/csv.h"

namespace cogdist {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_label_cell(std::string_view cell) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = cell.find(';', start);
    parts.push_back(trim(cell.substr(start, sep == std::string_view::npos
                                                ? std::string_view::npos
                                                : sep - start)));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return parts;
}

std::optional<std::size_t> find_column(const CsvRow& header,
                                       const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return i;
  }
  return std::nullopt;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ColumnMap parse_column_map(std::string_view config) {
  ColumnMap map;
  std::istringstream in{std::string(config)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw CorpusError("column map line " + std::to_string(line_no) +
                        ": expected key=value");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key == "text") {
      map.text = value;
    } else if (key == "dominant") {
      map.dominant = value;
    } else if (key == "secondary") {
      map.secondary = value;
    } else if (key == "distorted_part") {
      map.distorted_part = value;
    } else if (key == "delimiter") {
      if (value == "comma" || value == ",") {
        map.delimiter = ',';
      } else if (value == "tab" || value == "\\t") {
        map.delimiter = '\t';
      } else {
        throw CorpusError("column map: unsupported delimiter '" + value + "'");
      }
    } else {
      throw CorpusError("column map line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  if (map.text.empty() || map.dominant.empty()) {
    throw CorpusError("column map must name at least 'text' and 'dominant'");
  }
  return map;
}

ColumnMap load_column_map(const std::filesystem::path& path) {
  return parse_column_map(read_file(path));
}

std::vector<LabeledText> parse_dataset(std::string_view data,
                                       const ColumnMap& map) {
  const char delimiter = map.delimiter ? map.delimiter : sniff_delimiter(data);
  const std::vector<CsvRow> rows = parse_delimited(data, delimiter);
  if (rows.empty()) throw CorpusError("dataset has no header row");
  const CsvRow& header = rows.front();

  auto require = [&](const std::string& name) -> std::optional<std::size_t> {
    if (name.empty()) return std::nullopt;
    auto col = find_column(header, name);
    if (!col) throw CorpusError("missing mapped column '" + name + "'");
    return col;
  };
  const auto text_col = require(map.text);
  const auto dominant_col = require(map.dominant);
  const auto secondary_col = require(map.secondary);
  const auto part_col = require(map.distorted_part);

  auto cell = [](const CsvRow& row, std::optional<std::size_t> col) -> std::string_view {
    if (!col || *col >= row.size()) return {};
    return row[*col];
  };

  std::vector<LabeledText> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.size() == 1 && trim(row[0]).empty()) continue;  // blank line
    std::string text = trim(cell(row, text_col));
    if (text.empty()) continue;

    LabeledText rec;
    rec.id = records.size();
    rec.text = std::move(text);
    for (auto col : {dominant_col, secondary_col}) {
      for (const std::string& raw : split_label_cell(cell(row, col))) {
        const LabelMatch m = match_label(raw);
        if (m.label) {
          rec.labels.insert(*m.label);
        } else if (!m.no_distortion) {
          throw CorpusError("row " + std::to_string(r) +
                            ": unknown distortion label '" + raw + "'");
        }
      }
    }
    if (part_col) {
      std::string part = trim(cell(row, part_col));
      if (!part.empty()) rec.distorted_part = std::move(part);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<LabeledText> load_dataset(const std::filesystem::path& path,
                                      const ColumnMap& map) {
  return parse_dataset(read_file(path), map);
}

SplitPlan make_split(std::size_t corpus_size, int shift) {
  SplitPlan plan;
  plan.shift = shift;
  for (std::size_t i = 0; i < corpus_size; ++i) {
    if (i % kSplitModulus == static_cast<std::size_t>(shift)) {
      plan.test_indices.push_back(i);
    } else {
      plan.train_indices.push_back(i);
    }
  }
  return plan;
}

std::vector<SplitPlan> make_splits(std::size_t corpus_size) {
  if (corpus_size < kSplitModulus) {
    throw CorpusError("corpus needs at least 5 records to split, got " +
                      std::to_string(corpus_size));
  }
  std::vector<SplitPlan> plans;
  for (int shift = 0; shift < kNumRuns; ++shift) {
    plans.push_back(make_split(corpus_size, shift));
  }
  return plans;
}

std::vector<SplitPlan> make_splits(const std::vector<LabeledText>& corpus) {
  return make_splits(corpus.size());
}

}  // namespace cogdist
