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

#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace cogdist {
namespace {

std::vector<std::string> sentence_texts(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& s : split_sentences(text)) out.push_back(s.text);
  return out;
}

TEST(SplitSentences, TwoTerminalPeriods) {
  EXPECT_EQ(sentence_texts("I failed. Everyone hates me."),
            (std::vector<std::string>{"I failed.", "Everyone hates me."}));
}

TEST(SplitSentences, EmptyInput) { EXPECT_TRUE(split_sentences("").empty()); }

TEST(SplitSentences, AbbreviationGuard) {
  EXPECT_EQ(sentence_texts("Dr. Smith said no."),
            (std::vector<std::string>{"Dr. Smith said no."}));
}

TEST(SplitSentences, ExclamationAndQuestion) {
  EXPECT_EQ(sentence_texts("Why me? It is over! Fine."),
            (std::vector<std::string>{"Why me?", "It is over!", "Fine."}));
}

TEST(SplitSentences, ClosingQuoteStaysWithSentence) {
  EXPECT_EQ(sentence_texts("He said \"stop.\" Then he left."),
            (std::vector<std::string>{"He said \"stop.\"", "Then he left."}));
}

TEST(SplitSentences, NoWhitespaceNoBreak) {
  EXPECT_EQ(sentence_texts("Version 3.5 is out."),
            (std::vector<std::string>{"Version 3.5 is out."}));
}

TEST(SplitSentences, SpansReconstructInput) {
  const std::string text = "  First one.  Second!\n\nThird?   ";
  const auto sentences = split_sentences(text);
  ASSERT_EQ(sentences.size(), 3u);
  std::size_t pos = 0;
  for (const auto& s : sentences) {
    ASSERT_LE(pos, s.span.start);
    for (std::size_t k = pos; k < s.span.start; ++k) {
      EXPECT_TRUE(std::isspace(static_cast<unsigned char>(text[k])));
    }
    EXPECT_EQ(text.substr(s.span.start, s.span.size()), s.text);
    pos = s.span.end;
  }
  for (std::size_t k = pos; k < text.size(); ++k) {
    EXPECT_TRUE(std::isspace(static_cast<unsigned char>(text[k])));
  }
}

// Hand-annotated sample: each paragraph's lines are the gold sentences.
TEST(SplitSentences, AgreesWithAnnotatedSample) {
  std::ifstream in(COGDIST_TEST_DATA "/sentences.txt");
  ASSERT_TRUE(in);
  std::vector<std::vector<std::string>> paragraphs(1);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] == '#') continue;
    if (line.empty()) {
      if (!paragraphs.back().empty()) paragraphs.emplace_back();
      continue;
    }
    paragraphs.back().push_back(line);
  }
  if (paragraphs.back().empty()) paragraphs.pop_back();

  std::size_t gold_total = 0;
  std::size_t agreed = 0;
  for (const auto& gold : paragraphs) {
    std::string joined;
    for (const auto& s : gold) joined += (joined.empty() ? "" : " ") + s;
    const auto got = sentence_texts(joined);
    gold_total += gold.size();
    for (const auto& g : gold) {
      if (std::find(got.begin(), got.end(), g) != got.end()) ++agreed;
    }
  }
  ASSERT_EQ(gold_total, 50u);
  const double agreement = static_cast<double>(agreed) / static_cast<double>(gold_total);
  std::cout << "splitter agreement " << agreed << "/" << gold_total << "\n";
  EXPECT_GE(agreement, 0.95) << agreed << "/" << gold_total;
}

std::vector<std::string> token_texts(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text).tokens) out.push_back(t.text);
  return out;
}

TEST(Tokenize, WhitespaceOnly) {
  EXPECT_EQ(token_texts("not a bad thing"),
            (std::vector<std::string>{"not", "a", "bad", "thing"}));
}

TEST(Tokenize, ApostropheIsPunctuation) {
  const auto t = tokenize("I'm bad, at my job!");
  EXPECT_EQ(t.length(), 6u);
  EXPECT_EQ(token_texts("I'm bad, at my job!"),
            (std::vector<std::string>{"i", "m", "bad", "at", "my", "job"}));
}

TEST(Tokenize, Empty) {
  const auto t = tokenize("");
  EXPECT_EQ(t.length(), 0u);
  EXPECT_TRUE(t.sentences.empty());
}

TEST(Tokenize, OffsetsPointIntoSource) {
  const std::string src = "Hi,  THERE!";
  const auto t = tokenize(src);
  ASSERT_EQ(t.length(), 2u);
  EXPECT_EQ(t.tokens[0].span, (CharSpan{0, 2}));
  EXPECT_EQ(t.tokens[1].span, (CharSpan{5, 10}));
  EXPECT_EQ(t.tokens[1].text, "there");
}

TEST(Tokenize, DigitsKeptSymbolsDropped) {
  EXPECT_EQ(token_texts("I lost $50 + 3 friends :("),
            (std::vector<std::string>{"i", "lost", "50", "3", "friends"}));
}

TEST(Tokenize, UnicodeFoldingAndPunctuation) {
  EXPECT_EQ(token_texts("ÉCOLE — «Straße»…"), (std::vector<std::string>{"école", "straße"}));
  EXPECT_EQ(token_texts("It’s fine"), (std::vector<std::string>{"it", "s", "fine"}));
}

TEST(Tokenize, SentencesPartitionTokens) {
  const auto t = tokenize("One two. Three! Four five six?");
  ASSERT_EQ(t.sentences.size(), 3u);
  EXPECT_EQ(t.sentences[0], (TokenRange{0, 2}));
  EXPECT_EQ(t.sentences[1], (TokenRange{2, 3}));
  EXPECT_EQ(t.sentences[2], (TokenRange{3, 6}));
  EXPECT_EQ(t.sentence_ids(), (std::vector<std::uint32_t>{0, 0, 1, 2, 2, 2}));
}

TEST(Tokenize, FlatIsOneSentence) {
  const auto t = tokenize_flat("One. Two.");
  ASSERT_EQ(t.sentences.size(), 1u);
  EXPECT_EQ(t.sentences[0], (TokenRange{0, 2}));
}

TEST(Tokenize, InvalidUtf8IsSeparator) {
  EXPECT_EQ(token_texts(std::string("ab\xff" "cd")), (std::vector<std::string>{"ab", "cd"}));
}

TEST(Tokenize, ValidTokenPredicate) {
  EXPECT_TRUE(is_valid_token("bad"));
  EXPECT_FALSE(is_valid_token(""));
  EXPECT_FALSE(is_valid_token("a b"));
  EXPECT_FALSE(is_valid_token("a,b"));
}

std::string random_string(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "a", "B", "z", "Q", "7", " ", "  ", "\t", "\n", ".", ",", "!", "?", "'", "\"", "-",
      "é", "Ä", "ß", "—", "…", "’", "(", ")", "Mr.", "e.g.", "$", "😀", "ﬁ", "x"};
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string s;
  for (std::size_t n = len(rng); n > 0; --n) s += pieces[pick(rng)];
  return s;
}

TEST(TokenizeProperty, IdempotentOnTokenText) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto first = token_texts(random_string(rng));
    std::string joined;
    for (const auto& t : first) joined += (joined.empty() ? "" : " ") + t;
    EXPECT_EQ(token_texts(joined), first);
  }
}

TEST(TokenizeProperty, SpansDisjointIncreasingAndValid) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::string s = random_string(rng);
    const auto t = tokenize(s);
    std::size_t prev_end = 0;
    for (const auto& tok : t.tokens) {
      EXPECT_LT(tok.span.start, tok.span.end);
      EXPECT_LE(prev_end, tok.span.start);
      EXPECT_LE(tok.span.end, s.size());
      EXPECT_TRUE(is_valid_token(tok.text));
      prev_end = tok.span.end;
    }
    std::size_t covered = 0;
    for (const auto& r : t.sentences) {
      EXPECT_EQ(r.begin, covered);
      EXPECT_LT(r.begin, r.end);
      covered = r.end;
    }
    EXPECT_EQ(covered, t.length());
  }
}

TEST(TokenizeProperty, CaseInsensitive) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::string s = random_string(rng);
    std::string upper = s;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
      return c < 0x80 ? static_cast<char>(std::toupper(c)) : static_cast<char>(c);
    });
    EXPECT_EQ(token_texts(s), token_texts(upper)) << s;
  }
  EXPECT_EQ(token_texts("école straße"), token_texts("ÉCOLE STRAßE"));
}

}  // namespace
}  // namespace cogdist
