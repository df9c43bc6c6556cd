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

#include "cogdist/model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cogdist/textprep.h"

namespace cogdist {
namespace {

constexpr std::string_view kMetaFile = "model.meta";
constexpr std::string_view kDictExtension = ".tsv";
constexpr std::string_view kFormatVersion = "1";

void check_weight(double w, std::string_view context) {
  if (!(w > 0.0 && w <= 1.0)) {
    std::ostringstream msg;
    msg << context << ": weight " << w << " outside (0, 1]";
    throw InvalidWeightError(msg.str());
  }
}

void check_label(std::string_view label) {
  if (label.empty() || label.find_first_of("/\\\t\n") != std::string_view::npos ||
      label == "." || label == "..") {
    throw ModelError("invalid dictionary label '" + std::string(label) + "'");
  }
}

std::vector<std::pair<NGram, double>> sorted_entries(const DistortionDictionary& d) {
  std::vector<std::pair<NGram, double>> v(d.entries.begin(), d.entries.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first.key() < b.first.key();
  });
  return v;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

NGram NGram::from_tokens(std::span<const std::string_view> tokens) {
  if (tokens.empty()) throw ModelError("N-gram must have at least one token");
  NGram g;
  for (std::string_view t : tokens) {
    if (!is_valid_token(t)) {
      throw ModelError("invalid token '" + std::string(t) + "' in N-gram");
    }
    if (!g.key_.empty()) g.key_.push_back(' ');
    g.key_.append(t);
  }
  g.order_ = tokens.size();
  return g;
}

NGram NGram::from_tokens(std::span<const std::string> tokens) {
  std::vector<std::string_view> views(tokens.begin(), tokens.end());
  return from_tokens(std::span<const std::string_view>(views));
}

NGram NGram::parse(std::string_view joined) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= joined.size()) {
    const std::size_t sp = joined.find(' ', start);
    const std::size_t end = sp == std::string_view::npos ? joined.size() : sp;
    parts.push_back(joined.substr(start, end - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return from_tokens(std::span<const std::string_view>(parts));
}

std::vector<std::string> NGram::tokens() const {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t sp = key_.find(' ', start);
    out.push_back(key_.substr(start, sp == std::string::npos ? std::string::npos : sp - start));
    if (sp == std::string::npos) break;
    start = sp + 1;
  }
  return out;
}

Model::Model(std::vector<DistortionDictionary> dictionaries, ModelMetadata metadata)
    : dictionaries_(std::move(dictionaries)), metadata_(std::move(metadata)) {
  std::set<std::string> seen;
  for (const DistortionDictionary& d : dictionaries_) {
    check_label(d.label);
    if (!seen.insert(d.label).second) {
      throw ModelError("duplicate dictionary label '" + d.label + "'");
    }
    for (const auto& [g, w] : d.entries) {
      check_weight(w, d.label + " '" + g.key() + "'");
      max_order_ = std::max(max_order_, g.order());
    }
  }
}

std::size_t Model::entry_count() const {
  std::size_t n = 0;
  for (const auto& d : dictionaries_) n += d.entries.size();
  return n;
}

std::optional<std::size_t> Model::find(std::string_view label) const {
  for (std::size_t i = 0; i < dictionaries_.size(); ++i) {
    if (dictionaries_[i].label == label) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Model::labels() const {
  std::vector<std::string> out;
  for (const auto& d : dictionaries_) out.push_back(d.label);
  return out;
}

bool Model::operator==(const Model& other) const {
  if (metadata_ != other.metadata_) return false;
  if (dictionaries_.size() != other.dictionaries_.size()) return false;
  for (const auto& d : dictionaries_) {
    const auto j = other.find(d.label);
    if (!j || other.dictionaries_[*j].entries != d.entries) return false;
  }
  return true;
}

std::string format_weight(double weight) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", weight);
  double back = 0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
  if (back == weight) return buf;
  const auto res = std::to_chars(buf, buf + sizeof buf, weight, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

void save_model(const Model& model, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  for (const auto& d : model.dictionaries()) {
    for (const auto& [g, w] : d.entries) {
      if (w < kMinSavedWeight) {
        throw ModelError(d.label + " '" + g.key() + "': weight " + format_weight(w) +
                         " below the minimum storable weight");
      }
    }
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ModelError("cannot create " + dir.string() + ": " + ec.message());

  std::set<std::string> keep;
  for (const auto& d : model.dictionaries()) keep.insert(d.label + std::string(kDictExtension));
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == kDictExtension &&
        !keep.contains(entry.path().filename().string())) {
      fs::remove(entry.path());
    }
  }

  for (const auto& d : model.dictionaries()) {
    const fs::path file = dir / (d.label + std::string(kDictExtension));
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelError("cannot write " + file.string());
    for (const auto& [g, w] : sorted_entries(d)) {
      out << g.key() << '\t' << format_weight(w) << '\n';
    }
    if (!out) throw ModelError("write failed: " + file.string());
  }

  const fs::path meta = dir / kMetaFile;
  std::ofstream out(meta, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelError("cannot write " + meta.string());
  const auto& md = model.metadata();
  out << "version=" << kFormatVersion << '\n';
  out << "NM=" << model.max_order() << '\n';
  out << "SM=" << md.selection_metric << '\n';
  out << "IT=" << (md.inclusion_threshold ? std::to_string(*md.inclusion_threshold) : "") << '\n';
  out << "created-by=" << md.created_by << '\n';
  if (!out) throw ModelError("write failed: " + meta.string());
}

namespace {

ModelMetadata read_metadata(const std::filesystem::path& file) {
  ModelMetadata md;
  std::ifstream in(file, std::ios::binary);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ModelError(file.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "SM") {
      md.selection_metric = value;
    } else if (key == "IT" && !value.empty()) {
      int it = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), it);
      if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw ModelError(file.string() + ":" + std::to_string(line_no) + ": bad IT value");
      }
      md.inclusion_threshold = it;
    } else if (key == "created-by") {
      md.created_by = value;
    }
    // NM is derived from the entries; version is informational.
  }
  return md;
}

DistortionDictionary read_dictionary(const std::filesystem::path& file) {
  DistortionDictionary dict;
  dict.label = file.stem().string();
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ModelError("cannot open " + file.string());
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ModelError(file.string() + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::string text = line;
    double weight = 1.0;
    const auto tab = line.find('\t');
    if (tab != std::string::npos) {
      text = line.substr(0, tab);
      const std::string w = trim(std::string_view(line).substr(tab + 1));
      const auto res = std::from_chars(w.data(), w.data() + w.size(), weight);
      if (w.empty() || res.ec != std::errc{} || res.ptr != w.data() + w.size()) {
        fail("malformed weight '" + w + "'");
      }
      if (!(weight > 0.0 && weight <= 1.0)) {
        throw InvalidWeightError(file.string() + ":" + std::to_string(line_no) +
                                 ": weight " + w + " outside (0, 1]");
      }
    }
    const TokenizedText tt = tokenize_flat(text);
    if (tt.tokens.empty()) fail("line has no tokens");
    std::vector<std::string> toks;
    for (const Token& t : tt.tokens) toks.push_back(t.text);
    const NGram g = NGram::from_tokens(std::span<const std::string>(toks));
    auto [it, inserted] = dict.entries.emplace(g, weight);
    if (!inserted) it->second = std::max(it->second, weight);
  }
  return dict;
}

}  // namespace

Model load_model(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ModelError("model directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == kDictExtension) {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw ModelError("no dictionary files in " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<DistortionDictionary> dicts;
  for (const auto& f : files) dicts.push_back(read_dictionary(f));
  ModelMetadata md;
  if (fs::exists(dir / kMetaFile)) md = read_metadata(dir / kMetaFile);
  return Model(std::move(dicts), std::move(md));
}

std::size_t ModelDiff::change_count() const {
  std::size_t n = 0;
  for (const auto& d : dictionaries) n += d.added.size() + d.removed.size() + d.reweighted.size();
  return n;
}

ModelDiff diff_models(const Model& a, const Model& b) {
  auto la = a.labels();
  auto lb = b.labels();
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) throw ModelError("cannot diff models with different label sets");

  ModelDiff diff;
  for (const std::string& label : la) {
    const auto& da = a.dictionaries()[*a.find(label)];
    const auto& db = b.dictionaries()[*b.find(label)];
    DictionaryDiff dd;
    dd.label = label;
    for (const auto& [g, w] : db.entries) {
      const auto it = da.entries.find(g);
      if (it == da.entries.end()) {
        dd.added.push_back({g, w});
      } else if (std::abs(w - it->second) > kReweightEpsilon) {
        dd.reweighted.push_back({g, it->second, w});
      }
    }
    for (const auto& [g, w] : da.entries) {
      if (!db.entries.contains(g)) dd.removed.push_back({g, w});
    }
    auto by_key = [](const auto& x, const auto& y) { return x.ngram.key() < y.ngram.key(); };
    std::sort(dd.added.begin(), dd.added.end(), by_key);
    std::sort(dd.removed.begin(), dd.removed.end(), by_key);
    std::sort(dd.reweighted.begin(), dd.reweighted.end(), by_key);
    if (!dd.empty()) diff.dictionaries.push_back(std::move(dd));
  }
  return diff;
}

EditOutcome edit_entry(const Model& model, std::string_view label,
                       const NGram& ngram, std::optional<double> weight) {
  const auto idx = model.find(label);
  if (!idx) throw UnknownLabelError("unknown distortion '" + std::string(label) + "'");
  if (weight) check_weight(*weight, std::string(label) + " '" + ngram.key() + "'");
  if (ngram.order() == 0) throw ModelError("empty N-gram");

  std::vector<DistortionDictionary> dicts = model.dictionaries();
  auto& entries = dicts[*idx].entries;
  EditOutcome outcome;
  if (const auto it = entries.find(ngram); it != entries.end()) outcome.previous = it->second;

  if (weight) {
    outcome.changed = !outcome.previous || *outcome.previous != *weight;
    entries[ngram] = *weight;
  } else {
    outcome.changed = outcome.previous.has_value();
    entries.erase(ngram);
  }
  outcome.model = Model(std::move(dicts), model.metadata());
  return outcome;
}

}  // namespace cogdist
