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

#include "cogdist/textprep.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <cctype>

namespace cogdist {
namespace {

// Lowercased abbreviations that do not end a sentence when followed by '.'.
constexpr std::array<std::string_view, 44> kAbbreviations = {
    "mr",   "mrs",  "ms",   "dr",   "prof", "sr",   "jr",   "st",   "vs",
    "inc",  "ltd",  "co",   "corp", "mt",   "jan",  "feb",  "mar",  "apr",
    "jun",  "jul",  "aug",  "sep",  "sept", "oct",  "nov",  "dec",  "approx",
    "dept", "est",  "fig",  "gen",  "gov",  "lt",   "col",  "capt", "sgt",
    "rev",  "ave",  "blvd", "rd",   "hon",  "pres", "sen",  "rep"};

bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Length in bytes of a closing quote/bracket at `pos`, or 0.
std::size_t closer_length(std::string_view s, std::size_t pos) {
  const char c = s[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']' || c == '}') return 1;
  // U+2019 ’ and U+201D ” in UTF-8.
  if (s.substr(pos, 3) == "\xE2\x80\x99" || s.substr(pos, 3) == "\xE2\x80\x9D")
    return 3;
  return 0;
}

bool is_opener_byte(char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{';
}

// The word immediately before position `dot` (exclusive), without leading
// opening quotes or brackets.
std::string_view word_before(std::string_view s, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !is_space_byte(s[b - 1])) --b;
  while (b < dot && is_opener_byte(s[b])) ++b;
  return s.substr(b, dot - b);
}

bool is_abbreviation(std::string_view word) {
  if (word.empty()) return false;
  // Initials ("J.") and dotted forms ("e.g", "U.S", "a.m").
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0])))
    return true;
  if (word.find('.') != std::string_view::npos) return true;
  std::string lower(word);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) !=
         kAbbreviations.end();
}

bool starts_lowercase(std::string_view s, std::size_t pos) {
  while (pos < s.size() && is_opener_byte(s[pos])) ++pos;
  if (pos >= s.size()) return false;
  UChar32 c;
  std::int32_t i = static_cast<std::int32_t>(pos);
  U8_NEXT(s.data(), i, static_cast<std::int32_t>(s.size()), c);
  return c >= 0 && u_islower(c);
}

void push_sentence(std::string_view text, std::size_t begin, std::size_t end,
                   std::vector<Sentence>& out) {
  while (begin < end && is_space_byte(text[begin])) ++begin;
  while (end > begin && is_space_byte(text[end - 1])) --end;
  if (begin < end) {
    out.push_back({std::string(text.substr(begin, end - begin)), {begin, end}});
  }
}

void tokenize_range(std::string_view text, std::size_t begin, std::size_t end,
                    std::vector<Token>& out) {
  const char* data = text.data();
  const auto limit = static_cast<std::int32_t>(end);
  std::int32_t i = static_cast<std::int32_t>(begin);
  std::string current;
  std::size_t token_start = 0;
  bool in_token = false;
  while (i < limit) {
    const std::int32_t char_start = i;
    UChar32 c;
    U8_NEXT(data, i, limit, c);
    const bool sep = c < 0 || is_separator(static_cast<char32_t>(c));
    if (sep) {
      if (in_token) {
        out.push_back({std::move(current), {token_start, static_cast<std::size_t>(char_start)}});
        current.clear();
        in_token = false;
      }
      continue;
    }
    if (!in_token) {
      in_token = true;
      token_start = static_cast<std::size_t>(char_start);
    }
    const UChar32 folded = u_foldCase(c, U_FOLD_CASE_DEFAULT);
    char buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, folded);
    current.append(buf, static_cast<std::size_t>(n));
  }
  if (in_token) {
    out.push_back({std::move(current), {token_start, end}});
  }
}

TokenizedText tokenize_spans(std::string_view text,
                             const std::vector<CharSpan>& spans) {
  TokenizedText result;
  result.source = std::string(text);
  for (const CharSpan& span : spans) {
    const std::size_t first = result.tokens.size();
    tokenize_range(text, span.start, span.end, result.tokens);
    if (result.tokens.size() > first) {
      result.sentences.push_back({first, result.tokens.size()});
    }
  }
  return result;
}

}  // namespace

bool is_separator(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  if (u_isUWhiteSpace(cp)) return true;
  constexpr std::uint32_t kMask = U_GC_P_MASK | U_GC_S_MASK | U_GC_CC_MASK |
                                  U_GC_CF_MASK | U_GC_Z_MASK;
  return (U_GET_GC_MASK(cp) & kMask) != 0;
}

bool is_valid_token(std::string_view s) {
  if (s.empty()) return false;
  const auto limit = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < limit) {
    UChar32 c;
    U8_NEXT(s.data(), i, limit, c);
    if (c < 0 || is_separator(static_cast<char32_t>(c))) return false;
  }
  return true;
}

std::vector<std::uint32_t> TokenizedText::sentence_ids() const {
  std::vector<std::uint32_t> ids(tokens.size(), 0);
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (std::size_t t = sentences[s].begin; t < sentences[s].end; ++t) {
      ids[t] = static_cast<std::uint32_t>(s);
    }
  }
  return ids;
}

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    // Blank line: paragraph break.
    if (text[pos] == '\n') {
      std::size_t q = pos + 1;
      while (q < text.size() && (text[q] == ' ' || text[q] == '\t' || text[q] == '\r')) ++q;
      if (q < text.size() && text[q] == '\n') {
        push_sentence(text, start, pos, out);
        start = q + 1;
        pos = q + 1;
        continue;
      }
      ++pos;
      continue;
    }
    if (!is_terminal(text[pos])) {
      ++pos;
      continue;
    }
    const std::size_t run_begin = pos;
    bool only_periods = true;
    while (pos < text.size() && is_terminal(text[pos])) {
      only_periods = only_periods && text[pos] == '.';
      ++pos;
    }
    while (pos < text.size()) {
      const std::size_t len = closer_length(text, pos);
      if (len == 0) break;
      pos += len;
    }
    if (pos < text.size() && !is_space_byte(text[pos])) continue;

    bool boundary = true;
    if (only_periods) {
      std::size_t next = pos;
      while (next < text.size() && is_space_byte(text[next])) ++next;
      if (run_begin - start > 0 &&
          pos - run_begin == 1 && is_abbreviation(word_before(text, run_begin))) {
        boundary = false;
      } else if (starts_lowercase(text, next)) {
        boundary = false;
      }
    }
    if (boundary) {
      push_sentence(text, start, pos, out);
      start = pos;
    }
  }
  push_sentence(text, start, text.size(), out);
  return out;
}

TokenizedText tokenize(std::string_view text) {
  std::vector<CharSpan> spans;
  for (const Sentence& s : split_sentences(text)) spans.push_back(s.span);
  return tokenize_spans(text, spans);
}

TokenizedText tokenize_flat(std::string_view text) {
  return tokenize_spans(text, {CharSpan{0, text.size()}});
}

}  // namespace cogdist
