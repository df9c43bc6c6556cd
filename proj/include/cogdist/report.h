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

#ifndef COGDIST_REPORT_H_
#define COGDIST_REPORT_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cogdist/evaluation.h"
#include "json.hpp"

namespace cogdist {

// Flat table row for one grid cell.
struct GridRow {
  int max_order = 0;
  std::string metric;
  int inclusion_threshold = 0;
  int detection_threshold = 0;
  bool weighted = false;
  double mean_f1 = 0.0;
  double min_f1 = 0.0;
  double max_f1 = 0.0;
  double mpe = 0.0;
  std::vector<double> run_f1;
  std::array<double, kNumDistortions> label_f1{};
  double binary_f1 = 0.0;

  bool operator==(const GridRow&) const = default;
};

std::vector<GridRow> to_rows(const std::vector<GridCell>& cells);

// CSV with a header row; numbers use the shortest exact representation, so
// parse_grid_csv(format_grid_csv(rows)) == rows.
std::string format_grid_csv(const std::vector<GridRow>& rows);
std::vector<GridRow> parse_grid_csv(std::string_view csv);

// Best cell per weighting mode with per-distortion precision/recall/F1 and
// run spread, plus min/max error-bar data for the best cell of every
// (mode, NM) and (mode, SM) combination.
nlohmann::json summarize_grid(const std::vector<GridCell>& cells);

nlohmann::json report_to_json(const EvalReport& report);

// Human-readable summary of a single report.
std::string format_report(const EvalReport& report);

// Writes `csv_path` and/or `json_path` (empty path = skip). Throws
// std::invalid_argument for an empty cell list.
void emit_report(const std::vector<GridCell>& cells, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path);

}  // namespace cogdist

#endif  // COGDIST_REPORT_H_
