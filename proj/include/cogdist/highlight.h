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

#ifndef COGDIST_HIGHLIGHT_H_
#define COGDIST_HIGHLIGHT_H_

#include <string>
#include <vector>

#include "cogdist/recognizer.h"
#include "cogdist/textprep.h"

namespace cogdist {

struct Highlight {
  std::string label;
  double score = 0.0;
  bool detected = false;
  std::vector<CharSpan> spans;  // sorted by start, distinct
};

// Source intervals of matched N-grams, one entry per distortion that has
// matches, ordered by label name. Undetected distortions are omitted unless
// `include_undetected` is set.
std::vector<Highlight> highlight(const RecognitionResult& result, const TokenizedText& text,
                                 bool include_undetected = false);

// Terminal rendering with ANSI colors and a legend. Identical intervals
// claimed by several distortions are drawn stacked (bold color of the first
// label by name, underline for the rest) and tagged. Without highlights the
// source is returned unchanged.
std::string render_ansi(const TokenizedText& text, const std::vector<Highlight>& highlights);

// HTML fragment: each highlighted interval becomes nested
// <mark data-distortion="..."> elements in label-name order.
std::string render_html(const TokenizedText& text, const std::vector<Highlight>& highlights);

std::string html_escape(std::string_view s);

}  // namespace cogdist

#endif  // COGDIST_HIGHLIGHT_H_
