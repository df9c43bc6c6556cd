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

#ifndef COGDIST_TEXTPREP_H_
#define COGDIST_TEXTPREP_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cogdist {

// Half-open interval [start, end) of UTF-8 byte offsets into a source string.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool operator==(const CharSpan&) const = default;
};

struct Token {
  std::string text;  // case-folded, never empty, no separators
  CharSpan span;

  bool operator==(const Token&) const = default;
};

// Half-open interval of token indices.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const TokenRange&) const = default;
};

struct Sentence {
  std::string text;
  CharSpan span;
};

// A source string with its tokens and the sentence partition over them.
// Sentences never have zero tokens; together they cover every token index
// exactly once, in order.
struct TokenizedText {
  std::string source;
  std::vector<Token> tokens;
  std::vector<TokenRange> sentences;

  std::size_t length() const { return tokens.size(); }

  // Sentence index of every token, parallel to `tokens`.
  std::vector<std::uint32_t> sentence_ids() const;
};

// Rule-based splitter: a boundary follows a run of '.', '!' or '?' (plus any
// closing quotes or brackets) when whitespace comes next. Periods are further
// guarded against abbreviations and initials and require the next word not to
// start in lowercase. Spans exclude surrounding whitespace.
std::vector<Sentence> split_sentences(std::string_view text);

// Splits `text` into sentences, then into maximal runs of characters that are
// neither whitespace nor Unicode punctuation (P*) nor symbols (S*). Token text
// is simple-case-folded. Digits are kept.
TokenizedText tokenize(std::string_view text);

// Tokenizes without sentence splitting; the whole input is one sentence.
TokenizedText tokenize_flat(std::string_view text);

// True if `c` is treated as a token separator.
bool is_separator(char32_t c);

// True if `s` is a valid token text (non-empty and free of separators).
bool is_valid_token(std::string_view s);

}  // namespace cogdist

#endif  // COGDIST_TEXTPREP_H_
