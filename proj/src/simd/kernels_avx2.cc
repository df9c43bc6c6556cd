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

#include <immintrin.h>

#include <bit>

#include "cogdist/simd/kernels.h"

namespace cogdist::simd::avx2 {

// Eight windows per iteration; the remainder falls back to the scalar loop.

void convolve(std::span<const std::int32_t> text, std::span<const std::int32_t> reversed,
              std::span<std::int32_t> y) {
  const std::size_t n = reversed.size();
  const std::size_t windows = text.size() - n + 1;
  const std::int32_t* t = text.data();
  std::size_t i = 0;
  for (; i + 8 <= windows; i += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t q = 0; q < n; ++q) {
      if (reversed[q] < 0) continue;
      const __m256i tap = _mm256_set1_epi32(reversed[q]);
      const __m256i win =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i + n - 1 - q));
      // cmpeq yields -1 per equal lane.
      acc = _mm256_sub_epi32(acc, _mm256_cmpeq_epi32(win, tap));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y.data() + i), acc);
  }
  if (i < windows) {
    scalar::convolve(text.subspan(i), reversed, y.subspan(i));
  }
}

std::size_t full_matches(std::span<const std::int32_t> text,
                         std::span<const std::int32_t> reversed,
                         std::span<std::uint32_t> positions) {
  const std::size_t n = reversed.size();
  const std::size_t windows = text.size() - n + 1;
  const std::int32_t* t = text.data();
  for (std::size_t q = 0; q < n; ++q) {
    if (reversed[q] < 0) return 0;
  }
  std::size_t found = 0;
  std::size_t i = 0;
  for (; i + 8 <= windows; i += 8) {
    __m256i all = _mm256_set1_epi32(-1);
    for (std::size_t q = 0; q < n; ++q) {
      const __m256i tap = _mm256_set1_epi32(reversed[q]);
      const __m256i win =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i + n - 1 - q));
      all = _mm256_and_si256(all, _mm256_cmpeq_epi32(win, tap));
      if (_mm256_testz_si256(all, all)) break;
    }
    auto bits = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(all)));
    while (bits != 0) {
      positions[found++] = static_cast<std::uint32_t>(i + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  if (i < windows) {
    const std::size_t tail = scalar::full_matches(text.subspan(i), reversed,
                                                  positions.subspan(found));
    for (std::size_t k = found; k < found + tail; ++k) {
      positions[k] += static_cast<std::uint32_t>(i);
    }
    found += tail;
  }
  return found;
}

}  // namespace cogdist::simd::avx2
