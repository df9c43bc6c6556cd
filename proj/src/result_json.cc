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

#include "cogdist/result_json.h"

namespace cogdist {

using nlohmann::json;

json result_to_json(const RecognitionResult& result) {
  json scores = json::object();
  json raw = json::object();
  json decisions = json::object();
  for (std::size_t j = 0; j < result.labels.size(); ++j) {
    scores[result.labels[j]] = result.scores[j];
    raw[result.labels[j]] = result.raw_counts[j];
    decisions[result.labels[j]] = static_cast<bool>(result.decisions[j]);
  }
  json matches = json::array();
  for (const MatchSpan& m : result.matches) {
    matches.push_back({{"distortion", m.label},
                       {"tokens", m.ngram.tokens()},
                       {"char_start", m.chars.start},
                       {"char_end", m.chars.end},
                       {"weight", m.weight}});
  }
  return {{"length", result.length},
          {"scores", std::move(scores)},
          {"raw_counts", std::move(raw)},
          {"decisions", std::move(decisions)},
          {"matches", std::move(matches)}};
}

std::string serialize_result(const RecognitionResult& result) {
  return result_to_json(result).dump();
}

json highlights_to_json(const std::vector<Highlight>& highlights) {
  json out = json::array();
  for (const Highlight& h : highlights) {
    json spans = json::array();
    for (const CharSpan& s : h.spans) spans.push_back({s.start, s.end});
    out.push_back({{"distortion", h.label},
                   {"score", h.score},
                   {"detected", h.detected},
                   {"spans", std::move(spans)}});
  }
  return out;
}

json diff_to_json(const ModelDiff& diff) {
  json out = json::object();
  for (const DictionaryDiff& d : diff.dictionaries) {
    json added = json::array();
    json removed = json::array();
    json reweighted = json::array();
    for (const auto& e : d.added) added.push_back({{"ngram", e.ngram.key()}, {"weight", e.weight}});
    for (const auto& e : d.removed) removed.push_back({{"ngram", e.ngram.key()}, {"weight", e.weight}});
    for (const auto& e : d.reweighted) {
      reweighted.push_back({{"ngram", e.ngram.key()},
                            {"before", e.before},
                            {"after", e.after},
                            {"delta", e.delta()}});
    }
    out[d.label] = {{"added", std::move(added)},
                    {"removed", std::move(removed)},
                    {"reweighted", std::move(reweighted)}};
  }
  return {{"changes", diff.change_count()}, {"dictionaries", std::move(out)}};
}

}  // namespace cogdist
