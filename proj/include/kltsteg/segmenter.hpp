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

#include <cstddef>
#include <vector>

#include "kltsteg/raster.hpp"

namespace kltsteg {

// One band of s pixel rows, unrolled to a 3s x n channel matrix.
struct Segment {
  std::size_t index = 0;
  PlaneMatrix matrix;

  bool operator==(const Segment&) const = default;
};

struct PaddedMatrix {
  PlaneMatrix matrix;
  std::size_t original_pixel_rows = 0;
};

// Appends copies of the last pixel row (its R, G and B rows together) until
// the pixel row count is a multiple of segment_rows.
PaddedMatrix pad_rows(const PlaneMatrix& matrix, std::size_t segment_rows);

// Requires matrix.rows() % (3 * segment_rows) == 0.
std::vector<Segment> split_segments(const PlaneMatrix& matrix,
                                    std::size_t segment_rows);

// Concatenates segments in index order and truncates to original_pixel_rows.
PlaneMatrix join_segments(const std::vector<Segment>& segments,
                          std::size_t original_pixel_rows);

constexpr std::size_t segment_count(std::size_t pixel_rows,
                                    std::size_t segment_rows) {
  return (pixel_rows + segment_rows - 1) / segment_rows;
}

}  // namespace kltsteg
