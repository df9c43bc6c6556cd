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

#ifndef COGDIST_CSV_H_
#define COGDIST_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace cogdist {

using CsvRow = std::vector<std::string>;

// RFC 4180 style parsing: fields may be double-quoted, quoted fields may
// contain the delimiter, doubled quotes and line breaks. CRLF and LF are both
// accepted as record terminators. A leading UTF-8 BOM is skipped.
std::vector<CsvRow> parse_delimited(std::string_view data, char delimiter);

// Picks ',' or '\t' by counting unquoted occurrences in the first record.
char sniff_delimiter(std::string_view data);

// Quotes `field` when it contains the delimiter, a quote or a line break.
std::string escape_field(std::string_view field, char delimiter);

}  // namespace cogdist

#endif  // COGDIST_CSV_H_
