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

#include "cogdist/report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cogdist/csv.h"

namespace cogdist {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("bad number in grid table: '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("bad integer in grid table: '" + s + "'");
  }
  return v;
}

json label_breakdown(const EvalReport& r) {
  json labels = json::object();
  for (std::size_t i = 0; i < kNumDistortions; ++i) {
    double p = 0, rc = 0;
    for (const SplitScore& s : r.runs) {
      p += s.per_label[i].precision();
      rc += s.per_label[i].recall();
    }
    const double n = r.runs.empty() ? 1.0 : static_cast<double>(r.runs.size());
    labels[std::string(kCanonicalLabels[i])] = {
        {"precision", p / n}, {"recall", rc / n}, {"f1", r.label_f1[i]}};
  }
  return labels;
}

json cell_to_json(const GridCell& c) {
  json j = report_to_json(c.report);
  j["NM"] = c.max_order;
  j["SM"] = metric_name(c.metric);
  j["IT"] = c.inclusion_threshold;
  j["DT"] = c.detection_threshold;
  j["weighted"] = c.weighted;
  return j;
}

json error_bar(const GridCell& c) {
  return {{"NM", c.max_order},          {"SM", metric_name(c.metric)},
          {"IT", c.inclusion_threshold}, {"DT", c.detection_threshold},
          {"mean", c.report.mean_f1},    {"min", c.report.min_f1},
          {"max", c.report.max_f1},      {"mpe", c.report.mpe}};
}

}  // namespace

std::vector<GridRow> to_rows(const std::vector<GridCell>& cells) {
  std::vector<GridRow> rows;
  rows.reserve(cells.size());
  for (const GridCell& c : cells) {
    GridRow r;
    r.max_order = c.max_order;
    r.metric = std::string(metric_name(c.metric));
    r.inclusion_threshold = c.inclusion_threshold;
    r.detection_threshold = c.detection_threshold;
    r.weighted = c.weighted;
    r.mean_f1 = c.report.mean_f1;
    r.min_f1 = c.report.min_f1;
    r.max_f1 = c.report.max_f1;
    r.mpe = c.report.mpe;
    r.run_f1 = c.report.run_f1();
    r.label_f1 = c.report.label_f1;
    r.binary_f1 = c.report.binary_f1;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string format_grid_csv(const std::vector<GridRow>& rows) {
  std::size_t runs = 0;
  for (const auto& r : rows) runs = std::max(runs, r.run_f1.size());
  std::ostringstream out;
  out << "NM,SM,IT,DT,weighted,mean_f1,min_f1,max_f1,mpe";
  for (std::size_t k = 0; k < runs; ++k) out << ",run" << k << "_f1";
  for (std::string_view l : kCanonicalLabels) out << ",f1_" << l;
  out << ",binary_f1\n";
  for (const auto& r : rows) {
    out << r.max_order << ',' << escape_field(r.metric, ',') << ',' << r.inclusion_threshold
        << ',' << r.detection_threshold << ',' << (r.weighted ? 1 : 0) << ',' << num(r.mean_f1)
        << ',' << num(r.min_f1) << ',' << num(r.max_f1) << ',' << num(r.mpe);
    for (std::size_t k = 0; k < runs; ++k) {
      out << ',';
      if (k < r.run_f1.size()) out << num(r.run_f1[k]);
    }
    for (double f : r.label_f1) out << ',' << num(f);
    out << ',' << num(r.binary_f1) << '\n';
  }
  return out.str();
}

std::vector<GridRow> parse_grid_csv(std::string_view csv) {
  const auto table = parse_delimited(csv, ',');
  if (table.empty()) throw std::runtime_error("grid table has no header");
  const auto& header = table.front();
  std::size_t runs = 0;
  while (9 + runs < header.size() && header[9 + runs].starts_with("run")) ++runs;
  const std::size_t expected = 9 + runs + kNumDistortions + 1;
  if (header.size() != expected) throw std::runtime_error("unexpected grid table header");

  std::vector<GridRow> rows;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& f = table[i];
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != expected) {
      throw std::runtime_error("grid table row " + std::to_string(i + 1) + " has " +
                               std::to_string(f.size()) + " fields");
    }
    GridRow r;
    r.max_order = parse_int(f[0]);
    r.metric = f[1];
    r.inclusion_threshold = parse_int(f[2]);
    r.detection_threshold = parse_int(f[3]);
    r.weighted = f[4] == "1";
    r.mean_f1 = parse_double(f[5]);
    r.min_f1 = parse_double(f[6]);
    r.max_f1 = parse_double(f[7]);
    r.mpe = parse_double(f[8]);
    for (std::size_t k = 0; k < runs; ++k) {
      if (!f[9 + k].empty()) r.run_f1.push_back(parse_double(f[9 + k]));
    }
    for (std::size_t k = 0; k < kNumDistortions; ++k) r.label_f1[k] = parse_double(f[9 + runs + k]);
    r.binary_f1 = parse_double(f.back());
    rows.push_back(std::move(r));
  }
  return rows;
}

json report_to_json(const EvalReport& r) {
  double lo = 1.0, hi = 0.0;
  for (double f : r.label_f1) {
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  return {{"mean_f1", r.mean_f1},
          {"min_f1", r.min_f1},
          {"max_f1", r.max_f1},
          {"mpe", r.mpe},
          {"run_f1", r.run_f1()},
          {"binary_f1", r.binary_f1},
          {"labels", label_breakdown(r)},
          {"label_f1_range", {lo, hi}}};
}

json summarize_grid(const std::vector<GridCell>& cells) {
  if (cells.empty()) throw std::invalid_argument("no grid cells to summarize");
  json best = json::object();
  json by_order = json::object();
  json by_metric = json::object();
  for (bool weighted : {false, true}) {
    const char* mode = weighted ? "weighted" : "unweighted";
    if (const GridCell* c = best_cell(cells, weighted)) best[mode] = cell_to_json(*c);
    std::map<int, const GridCell*> order_best;
    std::map<std::string, const GridCell*> metric_best;
    for (const GridCell& c : cells) {
      if (c.weighted != weighted) continue;
      auto& ob = order_best[c.max_order];
      if (!ob || c.report.mean_f1 > ob->report.mean_f1) ob = &c;
      auto& mb = metric_best[std::string(metric_name(c.metric))];
      if (!mb || c.report.mean_f1 > mb->report.mean_f1) mb = &c;
    }
    json o = json::object();
    for (const auto& [nm, c] : order_best) o[std::to_string(nm)] = error_bar(*c);
    json m = json::object();
    for (const auto& [sm, c] : metric_best) m[sm] = error_bar(*c);
    if (!o.empty()) by_order[mode] = std::move(o);
    if (!m.empty()) by_metric[mode] = std::move(m);
  }
  return {{"cells", cells.size()},
          {"best", std::move(best)},
          {"best_by_order", std::move(by_order)},
          {"best_by_metric", std::move(by_metric)}};
}

std::string format_report(const EvalReport& r) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "macro-F1 mean %.4f  min %.4f  max %.4f  MPE %.1f%%\n",
                r.mean_f1, r.min_f1, r.max_f1, r.mpe);
  out << line;
  const auto runs = r.run_f1();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::snprintf(line, sizeof line, "  run %zu (shift %zu): %.4f\n", k, k, runs[k]);
    out << line;
  }
  std::snprintf(line, sizeof line, "binary F1 (any distortion): %.4f\n", r.binary_f1);
  out << line;
  out << "per distortion (precision / recall / F1):\n";
  const json labels = label_breakdown(r);
  for (std::string_view l : kCanonicalLabels) {
    const auto& e = labels[std::string(l)];
    std::snprintf(line, sizeof line, "  %-26s %.3f / %.3f / %.3f\n", std::string(l).c_str(),
                  e["precision"].get<double>(), e["recall"].get<double>(),
                  e["f1"].get<double>());
    out << line;
  }
  return out.str();
}

void emit_report(const std::vector<GridCell>& cells, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path) {
  if (cells.empty()) throw std::invalid_argument("no grid cells to report");
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + csv_path.string());
    out << format_grid_csv(to_rows(cells));
    if (!out) throw std::runtime_error("write failed: " + csv_path.string());
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + json_path.string());
    out << summarize_grid(cells).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + json_path.string());
  }
}

}  // namespace cogdist
