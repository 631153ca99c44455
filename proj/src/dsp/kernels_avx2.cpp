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

// AVX2 variants. This translation unit is the only one built with -mavx2;
// nothing here may run before cpu_supports_avx2() has been checked.

#include <immintrin.h>

#include <cstring>

#include "kltsteg/dsp/kernels.hpp"

namespace kltsteg::dsp {
namespace {

inline std::uint64_t HorizontalSum64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

inline __m256d LoadFourU8AsDouble(const std::uint8_t* p) {
  std::int32_t packed;
  std::memcpy(&packed, p, sizeof(packed));
  return _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(_mm_cvtsi32_si128(packed)));
}

std::uint64_t SumU8_AVX2(const std::uint8_t* a, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
  }
  std::uint64_t sum = HorizontalSum64(acc);
  for (; i < n; ++i) sum += a[i];
  return sum;
}

std::uint64_t DotU8_AVX2(const std::uint8_t* a, const std::uint8_t* b,
                         std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i va = _mm256_cvtepu8_epi16(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
    const __m256i vb = _mm256_cvtepu8_epi16(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
    // Pairwise sums of u8*u8 products stay below 2^17, so int32 is exact.
    const __m256i prod = _mm256_madd_epi16(va, vb);
    acc = _mm256_add_epi64(
        acc, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(prod)));
    acc = _mm256_add_epi64(
        acc, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(prod, 1)));
  }
  std::uint64_t sum = HorizontalSum64(acc);
  for (; i < n; ++i) sum += static_cast<std::uint32_t>(a[i]) * b[i];
  return sum;
}

std::uint64_t SumAbsDiffU8_AVX2(const std::uint8_t* a, const std::uint8_t* b,
                                std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(va, vb));
  }
  std::uint64_t sum = HorizontalSum64(acc);
  for (; i < n; ++i) sum += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return sum;
}

void AccumulateCentered_AVX2(const std::uint8_t* row, double mean,
                             double weight, double* acc, std::size_t n) {
  const __m256d vmean = _mm256_set1_pd(mean);
  const __m256d vweight = _mm256_set1_pd(weight);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d centered = _mm256_sub_pd(LoadFourU8AsDouble(row + j), vmean);
    const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(acc + j),
                                      _mm256_mul_pd(vweight, centered));
    _mm256_storeu_pd(acc + j, sum);
  }
  for (; j < n; ++j) {
    const double centered = static_cast<double>(row[j]) - mean;
    acc[j] = acc[j] + weight * centered;
  }
}

void AccumulateScaled_AVX2(const double* src, double weight, double* acc,
                           std::size_t n) {
  const __m256d vweight = _mm256_set1_pd(weight);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d sum =
        _mm256_add_pd(_mm256_loadu_pd(acc + j),
                      _mm256_mul_pd(vweight, _mm256_loadu_pd(src + j)));
    _mm256_storeu_pd(acc + j, sum);
  }
  for (; j < n; ++j) acc[j] = acc[j] + weight * src[j];
}

void RoundClampU8_AVX2(const double* src, double offset, std::uint8_t* dst,
                       std::size_t n) {
  const __m256d voffset = _mm256_set1_pd(offset);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d lo = _mm256_setzero_pd();
  const __m256d hi = _mm256_set1_pd(255.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d y = _mm256_add_pd(_mm256_loadu_pd(src + j), voffset);
    // trunc + (frac >= 0.5) is round-half-away for y >= 0; negative y
    // clamps to 0 either way.
    const __m256d t = _mm256_round_pd(y, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
    const __m256d up =
        _mm256_and_pd(_mm256_cmp_pd(_mm256_sub_pd(y, t), half, _CMP_GE_OQ), one);
    const __m256d r = _mm256_min_pd(_mm256_max_pd(_mm256_add_pd(t, up), lo), hi);
    const __m128i i32 = _mm256_cvttpd_epi32(r);
    const __m128i u8 = _mm_packus_epi16(_mm_packus_epi32(i32, i32), i32);
    const std::int32_t packed = _mm_cvtsi128_si32(u8);
    std::memcpy(dst + j, &packed, sizeof(packed));
  }
  scalar_kernels().round_clamp_u8(src + j, offset, dst + j, n - j);
}

void SubstituteLowBits_AVX2(const std::uint8_t* carrier,
                            const std::uint8_t* groups, std::uint8_t mask,
                            std::uint8_t* out, std::size_t n) {
  const __m256i vmask = _mm256_set1_epi8(static_cast<char>(mask));
  std::size_t j = 0;
  for (; j + 32 <= n; j += 32) {
    const __m256i c =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(carrier + j));
    const __m256i g =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(groups + j));
    const __m256i r = _mm256_or_si256(_mm256_andnot_si256(vmask, c),
                                      _mm256_and_si256(g, vmask));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + j), r);
  }
  scalar_kernels().substitute_low_bits(carrier + j, groups + j, mask, out + j,
                                       n - j);
}

void ExtractLowBits_AVX2(const std::uint8_t* src, std::uint8_t mask,
                         std::uint8_t* out, std::size_t n) {
  const __m256i vmask = _mm256_set1_epi8(static_cast<char>(mask));
  std::size_t j = 0;
  for (; j + 32 <= n; j += 32) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + j),
                        _mm256_and_si256(v, vmask));
  }
  scalar_kernels().extract_low_bits(src + j, mask, out + j, n - j);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{
      "avx2",
      SumU8_AVX2,
      DotU8_AVX2,
      SumAbsDiffU8_AVX2,
      AccumulateCentered_AVX2,
      AccumulateScaled_AVX2,
      RoundClampU8_AVX2,
      SubstituteLowBits_AVX2,
      ExtractLowBits_AVX2,
  };
  return table;
}

}  // namespace kltsteg::dsp
