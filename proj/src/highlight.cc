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

#include "cogdist/highlight.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace cogdist {
namespace {

constexpr const char* kPalette[] = {"31", "32", "33", "34", "35", "36", "91", "92", "93", "94"};

// Elementary segments between all span boundaries, each with the sorted
// set of labels covering it.
struct Segment {
  CharSpan span;
  std::vector<std::size_t> labels;  // indices into highlights
};

std::vector<Segment> segments(const std::vector<Highlight>& highlights) {
  std::set<std::size_t> cuts;
  for (const auto& h : highlights) {
    for (const auto& s : h.spans) {
      cuts.insert(s.start);
      cuts.insert(s.end);
    }
  }
  std::vector<Segment> out;
  if (cuts.empty()) return out;
  std::vector<std::size_t> points(cuts.begin(), cuts.end());
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    Segment seg{{points[k], points[k + 1]}, {}};
    for (std::size_t h = 0; h < highlights.size(); ++h) {
      for (const auto& s : highlights[h].spans) {
        if (s.start <= seg.span.start && seg.span.end <= s.end) {
          seg.labels.push_back(h);
          break;
        }
      }
    }
    if (!seg.labels.empty()) out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace

std::vector<Highlight> highlight(const RecognitionResult& result,
                                 const TokenizedText& /*text*/, bool include_undetected) {
  std::map<std::string, Highlight> by_label;
  for (const MatchSpan& m : result.matches) {
    const bool detected = result.decisions[m.dictionary];
    if (!detected && !include_undetected) continue;
    Highlight& h = by_label[m.label];
    h.label = m.label;
    h.score = result.scores[m.dictionary];
    h.detected = detected;
    h.spans.push_back(m.chars);
  }
  std::vector<Highlight> out;
  for (auto& [label, h] : by_label) {
    std::sort(h.spans.begin(), h.spans.end(), [](const CharSpan& a, const CharSpan& b) {
      return a.start != b.start ? a.start < b.start : a.end < b.end;
    });
    h.spans.erase(std::unique(h.spans.begin(), h.spans.end()), h.spans.end());
    out.push_back(std::move(h));
  }
  return out;
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string render_ansi(const TokenizedText& text, const std::vector<Highlight>& highlights) {
  const std::string& src = text.source;
  const std::vector<Segment> segs = segments(highlights);
  if (segs.empty()) return src;

  std::ostringstream out;
  std::size_t pos = 0;
  for (const Segment& seg : segs) {
    out << src.substr(pos, seg.span.start - pos);
    out << "\x1b[1;" << kPalette[seg.labels.front() % std::size(kPalette)] << 'm';
    if (seg.labels.size() > 1) out << "\x1b[4m";
    out << src.substr(seg.span.start, seg.span.size()) << "\x1b[0m";
    if (seg.labels.size() > 1) {
      out << "\x1b[2m[";
      for (std::size_t k = 0; k < seg.labels.size(); ++k) {
        if (k) out << '+';
        out << highlights[seg.labels[k]].label;
      }
      out << "]\x1b[0m";
    }
    pos = seg.span.end;
  }
  out << src.substr(pos) << '\n';
  for (std::size_t h = 0; h < highlights.size(); ++h) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f", highlights[h].score * 100.0);
    out << "  \x1b[1;" << kPalette[h % std::size(kPalette)] << "m\xE2\x96\xA0\x1b[0m "
        << highlights[h].label << ' ' << pct << '%'
        << (highlights[h].detected ? "" : " (below threshold)") << '\n';
  }
  return out.str();
}

std::string render_html(const TokenizedText& text, const std::vector<Highlight>& highlights) {
  const std::string& src = text.source;
  std::ostringstream out;
  std::size_t pos = 0;
  for (const Segment& seg : segments(highlights)) {
    out << html_escape(src.substr(pos, seg.span.start - pos));
    for (std::size_t h : seg.labels) {
      out << "<mark data-distortion=\"" << html_escape(highlights[h].label) << "\">";
    }
    out << html_escape(src.substr(seg.span.start, seg.span.size()));
    for (std::size_t k = 0; k < seg.labels.size(); ++k) out << "</mark>";
    pos = seg.span.end;
  }
  out << html_escape(src.substr(pos));
  return out.str();
}

}  // namespace cogdist
