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

#include "kltsteg/raster.hpp"

#include <string>
#include <utility>

#include "kltsteg/errors.hpp"

namespace kltsteg {

RgbRaster::RgbRaster(std::size_t width, std::size_t height)
    : width_(width), height_(height), channels_(3 * width * height, 0) {}

RgbRaster::RgbRaster(std::size_t width, std::size_t height,
                     std::vector<std::uint8_t> channels)
    : width_(width), height_(height), channels_(std::move(channels)) {
  if (channels_.size() != 3 * width_ * height_) {
    throw Error(ErrorKind::kDimensionMismatch,
                "raster " + std::to_string(width_) + "x" +
                    std::to_string(height_) + " needs " +
                    std::to_string(3 * width_ * height_) + " channels, got " +
                    std::to_string(channels_.size()));
  }
}

PlaneMatrix::PlaneMatrix(std::size_t rows, std::size_t cols,
                         std::vector<std::uint8_t> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ % 3 != 0) {
    throw Error(ErrorKind::kDimensionMismatch,
                "plane matrix row count " + std::to_string(rows_) +
                    " is not a multiple of 3");
  }
  if (values_.size() != rows_ * cols_) {
    throw Error(ErrorKind::kDimensionMismatch,
                "plane matrix value count does not match its shape");
  }
}

PlaneMatrix to_plane_matrix(const RgbRaster& raster) {
  const std::size_t m = raster.height();
  const std::size_t n = raster.width();
  std::vector<std::uint8_t> values(3 * m * n);
  const auto channels = raster.channels();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = (i * n + j) * 3;
      for (std::size_t c = 0; c < 3; ++c) {
        values[(3 * i + c) * n + j] = channels[src + c];
      }
    }
  }
  return PlaneMatrix(3 * m, n, std::move(values));
}

RgbRaster from_plane_matrix(const PlaneMatrix& matrix) {
  const std::size_t m = matrix.pixel_rows();
  const std::size_t n = matrix.cols();
  std::vector<std::uint8_t> channels(3 * m * n);
  const auto values = matrix.values();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t row = (3 * i + c) * n;
      for (std::size_t j = 0; j < n; ++j) {
        channels[(i * n + j) * 3 + c] = values[row + j];
      }
    }
  }
  return RgbRaster(n, m, std::move(channels));
}

}  // namespace kltsteg
