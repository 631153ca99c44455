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

#include "kltsteg/segmenter.hpp"

#include <algorithm>
#include <string>

#include "kltsteg/errors.hpp"

namespace kltsteg {

PaddedMatrix pad_rows(const PlaneMatrix& matrix, std::size_t segment_rows) {
  if (segment_rows == 0) {
    throw Error(ErrorKind::kInvalidArgument, "segment row count must be >= 1");
  }
  const std::size_t m = matrix.pixel_rows();
  if (m == 0) {
    throw Error(ErrorKind::kInvalidArgument, "cannot pad an empty matrix");
  }
  const std::size_t padded_m = segment_count(m, segment_rows) * segment_rows;
  if (padded_m == m) return {matrix, m};

  const std::size_t n = matrix.cols();
  std::vector<std::uint8_t> values(matrix.values().begin(), matrix.values().end());
  values.reserve(3 * padded_m * n);
  const auto last = matrix.values().subspan(3 * (m - 1) * n, 3 * n);
  for (std::size_t i = m; i < padded_m; ++i) {
    values.insert(values.end(), last.begin(), last.end());
  }
  return {PlaneMatrix(3 * padded_m, n, std::move(values)), m};
}

std::vector<Segment> split_segments(const PlaneMatrix& matrix,
                                    std::size_t segment_rows) {
  if (segment_rows == 0) {
    throw Error(ErrorKind::kInvalidArgument, "segment row count must be >= 1");
  }
  const std::size_t band = 3 * segment_rows;
  if (matrix.rows() == 0 || matrix.rows() % band != 0) {
    throw Error(ErrorKind::kDimensionMismatch,
                "row count " + std::to_string(matrix.rows()) +
                    " is not a multiple of 3*s = " + std::to_string(band));
  }
  const std::size_t n = matrix.cols();
  const auto values = matrix.values();
  std::vector<Segment> segments;
  segments.reserve(matrix.rows() / band);
  for (std::size_t start = 0; start < matrix.rows(); start += band) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(start * n);
    segments.push_back(
        {segments.size(),
         PlaneMatrix(band, n, std::vector<std::uint8_t>(first, first + band * n))});
  }
  return segments;
}

PlaneMatrix join_segments(const std::vector<Segment>& segments,
                          std::size_t original_pixel_rows) {
  if (segments.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no segments to join");
  }
  const std::size_t rows = segments.front().matrix.rows();
  const std::size_t cols = segments.front().matrix.cols();
  std::vector<const Segment*> ordered(segments.size(), nullptr);
  for (const Segment& seg : segments) {
    if (seg.matrix.rows() != rows || seg.matrix.cols() != cols) {
      throw Error(ErrorKind::kDimensionMismatch, "segments differ in shape");
    }
    if (seg.index >= ordered.size() || ordered[seg.index] != nullptr) {
      throw Error(ErrorKind::kInvalidArgument,
                  "segment indices are not a permutation of 0..N-1");
    }
    ordered[seg.index] = &seg;
  }
  const std::size_t total_pixel_rows = segments.size() * rows / 3;
  if (original_pixel_rows == 0 || original_pixel_rows > total_pixel_rows) {
    throw Error(ErrorKind::kDimensionMismatch,
                "original row count " + std::to_string(original_pixel_rows) +
                    " exceeds the joined row count");
  }
  std::vector<std::uint8_t> values;
  values.reserve(3 * original_pixel_rows * cols);
  for (const Segment* seg : ordered) {
    const auto v = seg->matrix.values();
    values.insert(values.end(), v.begin(), v.end());
  }
  values.resize(3 * original_pixel_rows * cols);
  return PlaneMatrix(3 * original_pixel_rows, cols, std::move(values));
}

}  // namespace kltsteg
