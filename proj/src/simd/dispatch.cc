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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cogdist/simd/kernels.h"

namespace cogdist::simd {
namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::convolve, &scalar::full_matches};

#if defined(COGDIST_HAVE_AVX2_TU)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::convolve, &avx2::full_matches};
#endif

Isa initial_isa() {
  if (const char* env = std::getenv("COGDIST_ISA")) {
    if (auto isa = parse_isa(env); isa && isa_supported(*isa)) return *isa;
  }
  return best_isa();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&kernels(initial_isa())};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "?";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  return std::nullopt;
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(COGDIST_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() { return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

const KernelTable& kernels(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("instruction set not supported: " + std::string(isa_name(isa)));
  }
#if defined(COGDIST_HAVE_AVX2_TU)
  if (isa == Isa::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) { active_slot().store(&kernels(isa), std::memory_order_release); }

}  // namespace cogdist::simd
