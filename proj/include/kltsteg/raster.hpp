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
#include <cstdint>
#include <span>
#include <vector>

namespace kltsteg {

// Decoded image: width x height pixels, channels stored row-major as
// R,G,B triples.
class RgbRaster {
 public:
  RgbRaster() = default;
  // Zero-filled raster.
  RgbRaster(std::size_t width, std::size_t height);
  // Throws kDimensionMismatch unless channels.size() == 3*width*height.
  RgbRaster(std::size_t width, std::size_t height,
            std::vector<std::uint8_t> channels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channel_count() const noexcept { return channels_.size(); }
  bool empty() const noexcept { return channels_.empty(); }

  std::span<const std::uint8_t> channels() const noexcept { return channels_; }
  std::span<std::uint8_t> channels() noexcept { return channels_; }

  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c) const {
    return channels_[(y * width_ + x) * 3 + c];
  }

  bool operator==(const RgbRaster&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> channels_;
};

// Channel-unrolled matrix: 3m rows by n columns. Pixel row i contributes
// three consecutive matrix rows 3i (R), 3i+1 (G), 3i+2 (B).
class PlaneMatrix {
 public:
  PlaneMatrix() = default;
  // Throws kDimensionMismatch unless rows % 3 == 0 and the value count matches.
  PlaneMatrix(std::size_t rows, std::size_t cols,
              std::vector<std::uint8_t> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t pixel_rows() const noexcept { return rows_ / 3; }

  std::uint8_t at(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  std::span<const std::uint8_t> row(std::size_t r) const {
    return std::span<const std::uint8_t>(values_).subspan(r * cols_, cols_);
  }
  std::span<const std::uint8_t> values() const noexcept { return values_; }

  bool operator==(const PlaneMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> values_;
};

PlaneMatrix to_plane_matrix(const RgbRaster& raster);
RgbRaster from_plane_matrix(const PlaneMatrix& matrix);

}  // namespace kltsteg
