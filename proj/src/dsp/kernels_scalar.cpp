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

#include <algorithm>
#include <cmath>

#include "kltsteg/dsp/kernels.hpp"

namespace kltsteg::dsp {
namespace {

std::uint64_t SumU8_C(const std::uint8_t* a, std::size_t n) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i];
  return sum;
}

std::uint64_t DotU8_C(const std::uint8_t* a, const std::uint8_t* b,
                      std::size_t n) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<std::uint32_t>(a[i]) * b[i];
  }
  return sum;
}

std::uint64_t SumAbsDiffU8_C(const std::uint8_t* a, const std::uint8_t* b,
                             std::size_t n) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  }
  return sum;
}

void AccumulateCentered_C(const std::uint8_t* row, double mean, double weight,
                          double* acc, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double centered = static_cast<double>(row[j]) - mean;
    acc[j] = acc[j] + weight * centered;
  }
}

void AccumulateScaled_C(const double* src, double weight, double* acc,
                        std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) acc[j] = acc[j] + weight * src[j];
}

void RoundClampU8_C(const double* src, double offset, std::uint8_t* dst,
                    std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double v = std::round(src[j] + offset);
    dst[j] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
}

void SubstituteLowBits_C(const std::uint8_t* carrier,
                         const std::uint8_t* groups, std::uint8_t mask,
                         std::uint8_t* out, std::size_t n) {
  const std::uint8_t keep = static_cast<std::uint8_t>(~mask);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = static_cast<std::uint8_t>((carrier[j] & keep) | (groups[j] & mask));
  }
}

void ExtractLowBits_C(const std::uint8_t* src, std::uint8_t mask,
                      std::uint8_t* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = static_cast<std::uint8_t>(src[j] & mask);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",          SumU8_C,           DotU8_C,
      SumAbsDiffU8_C,    AccumulateCentered_C, AccumulateScaled_C,
      RoundClampU8_C,    SubstituteLowBits_C,  ExtractLowBits_C,
  };
  return table;
}

}  // namespace kltsteg::dsp
