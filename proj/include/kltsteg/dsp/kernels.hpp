// Copyright 2026 The kltsteg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops used by the codec. Each entry has a scalar
// reference in kernels_scalar.cpp; vector variants must produce results
// bit-identical to the reference for every input (integer kernels are exact,
// floating-point kernels vectorize across independent columns and keep the
// per-element operation order of the reference).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace kltsteg::dsp {

struct KernelTable {
  std::string_view name;

  // Sum of n bytes.
  std::uint64_t (*sum_u8)(const std::uint8_t* a, std::size_t n);
  // Sum of a[i]*b[i].
  std::uint64_t (*dot_u8)(const std::uint8_t* a, const std::uint8_t* b,
                          std::size_t n);
  // Sum of |a[i]-b[i]|.
  std::uint64_t (*sum_abs_diff_u8)(const std::uint8_t* a,
                                   const std::uint8_t* b, std::size_t n);

  // acc[j] += weight * (double(row[j]) - mean)
  void (*accumulate_centered)(const std::uint8_t* row, double mean,
                              double weight, double* acc, std::size_t n);
  // acc[j] += weight * src[j]
  void (*accumulate_scaled)(const double* src, double weight, double* acc,
                            std::size_t n);
  // dst[j] = clamp(round_half_away(src[j] + offset), 0, 255)
  void (*round_clamp_u8)(const double* src, double offset, std::uint8_t* dst,
                         std::size_t n);

  // out[j] = (carrier[j] & ~mask) | (groups[j] & mask)
  void (*substitute_low_bits)(const std::uint8_t* carrier,
                              const std::uint8_t* groups, std::uint8_t mask,
                              std::uint8_t* out, std::size_t n);
  // out[j] = src[j] & mask
  void (*extract_low_bits)(const std::uint8_t* src, std::uint8_t mask,
                           std::uint8_t* out, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

// Best available table. Setting KLTSTEG_SIMD=scalar in the environment
// forces the reference kernels.
const KernelTable& active_kernels();

}  // namespace kltsteg::dsp
