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

#ifndef COGDIST_SIMD_KERNELS_H_
#define COGDIST_SIMD_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

// Token-id convolution primitives with a scalar reference and vectorized
// variants selected at runtime. All variants produce identical output.
//
// Conventions: `text` is a sequence of token ids; `reversed` is an N-gram
// kernel of length n stored in reverse token order; ids < 0 never match.
// Window i covers text[i, i + n), for i in [0, l - n].
namespace cogdist::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

// y[i] = sum_q [text[i + n - 1 - q] == reversed[q]]. `y` holds l - n + 1
// values. Requires n >= 1 and n <= l.
using ConvolveFn = void (*)(std::span<const std::int32_t> text,
                            std::span<const std::int32_t> reversed,
                            std::span<std::int32_t> y);

// Writes every i with y[i] == n into `positions` (capacity l - n + 1), in
// ascending order, and returns how many were written.
using FullMatchFn = std::size_t (*)(std::span<const std::int32_t> text,
                                    std::span<const std::int32_t> reversed,
                                    std::span<std::uint32_t> positions);

struct KernelTable {
  Isa isa;
  ConvolveFn convolve;
  FullMatchFn full_matches;
};

bool isa_supported(Isa isa);
Isa best_isa();

// Table for `isa`; throws std::invalid_argument when unsupported.
const KernelTable& kernels(Isa isa);

// The process-wide selection: best_isa() unless overridden by the
// COGDIST_ISA environment variable or set_active_isa().
const KernelTable& active_kernels();
void set_active_isa(Isa isa);

namespace scalar {
void convolve(std::span<const std::int32_t> text, std::span<const std::int32_t> reversed,
              std::span<std::int32_t> y);
std::size_t full_matches(std::span<const std::int32_t> text,
                         std::span<const std::int32_t> reversed,
                         std::span<std::uint32_t> positions);
}  // namespace scalar

namespace avx2 {
void convolve(std::span<const std::int32_t> text, std::span<const std::int32_t> reversed,
              std::span<std::int32_t> y);
std::size_t full_matches(std::span<const std::int32_t> text,
                         std::span<const std::int32_t> reversed,
                         std::span<std::uint32_t> positions);
}  // namespace avx2

}  // namespace cogdist::simd

#endif  // COGDIST_SIMD_KERNELS_H_
