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

#include "cogdist/simd/kernels.h"

namespace cogdist::simd::scalar {

void convolve(std::span<const std::int32_t> text, std::span<const std::int32_t> reversed,
              std::span<std::int32_t> y) {
  const std::size_t n = reversed.size();
  const std::size_t windows = text.size() - n + 1;
  for (std::size_t i = 0; i < windows; ++i) {
    std::int32_t acc = 0;
    for (std::size_t q = 0; q < n; ++q) {
      acc += (text[i + n - 1 - q] == reversed[q] && reversed[q] >= 0) ? 1 : 0;
    }
    y[i] = acc;
  }
}

std::size_t full_matches(std::span<const std::int32_t> text,
                         std::span<const std::int32_t> reversed,
                         std::span<std::uint32_t> positions) {
  const std::size_t n = reversed.size();
  const std::size_t windows = text.size() - n + 1;
  std::size_t found = 0;
  for (std::size_t i = 0; i < windows; ++i) {
    bool all = true;
    for (std::size_t q = 0; q < n && all; ++q) {
      all = text[i + n - 1 - q] == reversed[q] && reversed[q] >= 0;
    }
    if (all) positions[found++] = static_cast<std::uint32_t>(i);
  }
  return found;
}

}  // namespace cogdist::simd::scalar
