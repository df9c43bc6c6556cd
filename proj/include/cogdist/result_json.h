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

#ifndef COGDIST_RESULT_JSON_H_
#define COGDIST_RESULT_JSON_H_

#include <string>
#include <vector>

#include "cogdist/highlight.h"
#include "cogdist/model.h"
#include "cogdist/recognizer.h"
#include "json.hpp"

namespace cogdist {

// Wire format shared by the CLI (--json) and the audit server:
// {"length", "scores", "raw_counts", "decisions",
//  "matches": [{"distortion", "tokens", "char_start", "char_end", "weight"}]}
// Offsets are UTF-8 byte offsets into the submitted text.
nlohmann::json result_to_json(const RecognitionResult& result);

// Compact single-line serialization; byte-identical for identical results.
std::string serialize_result(const RecognitionResult& result);

nlohmann::json highlights_to_json(const std::vector<Highlight>& highlights);

nlohmann::json diff_to_json(const ModelDiff& diff);

}  // namespace cogdist

#endif  // COGDIST_RESULT_JSON_H_
