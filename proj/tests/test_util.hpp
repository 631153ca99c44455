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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "kltsteg/bitstream.hpp"
#include "kltsteg/payload.hpp"
#include "kltsteg/raster.hpp"

namespace kltsteg::testing {

inline RgbRaster RandomRaster(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> ch(3 * w * h);
  for (auto& c : ch) c = static_cast<std::uint8_t>(dist(rng));
  return RgbRaster(w, h, std::move(ch));
}

// Smooth gradient with mild noise; low-rank enough for realistic compression.
inline RgbRaster SmoothRaster(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::uniform_int_distribution<int> noise(-3, 3);
  std::vector<std::uint8_t> ch(3 * w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const int base[3] = {static_cast<int>(40 + 150 * x / std::max<std::size_t>(w, 1)),
                           static_cast<int>(60 + 120 * y / std::max<std::size_t>(h, 1)),
                           static_cast<int>(90 + 60 * (x + y) / (w + h))};
      for (int c = 0; c < 3; ++c) {
        ch[(y * w + x) * 3 + c] =
            static_cast<std::uint8_t>(std::clamp(base[c] + noise(rng), 0, 255));
      }
    }
  }
  return RgbRaster(w, h, std::move(ch));
}

inline Bitstream RandomBits(std::mt19937_64& rng, std::size_t count) {
  Bitstream bits;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < count; ++i) bits.push_bit(coin(rng));
  return bits;
}

inline PlaneMatrix RandomPlane(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> v(rows * cols);
  for (auto& x : v) x = static_cast<std::uint8_t>(dist(rng));
  return PlaneMatrix(rows, cols, std::move(v));
}

// Structurally valid payload with random field values (not a real encoding).
inline StegoPayload RandomPayload(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> small(1, 6);
  std::uniform_int_distribution<int> u16(0, 0xFFFF);
  std::uniform_int_distribution<int> i16(-32767, 32767);
  std::uniform_int_distribution<int> u8(0, 255);
  std::uniform_real_distribution<float> real(-1000.0f, 1000.0f);
  StegoPayload p;
  p.segment_rows = small(rng) % 4 + 1;
  p.message_width = small(rng) * 2;
  p.num_segments = small(rng) % 3 + 1;
  p.message_height = (p.num_segments - 1) * p.segment_rows + 1 + small(rng) % p.segment_rows;
  const std::size_t rows = 3 * p.segment_rows;
  for (std::size_t i = 0; i < p.num_segments; ++i) {
    SegmentCode c;
    c.rows = rows;
    c.cols = p.message_width;
    c.k = std::uniform_int_distribution<std::size_t>(1, rows)(rng);
    for (std::size_t r = 0; r < rows; ++r) c.mean_q.push_back(static_cast<std::uint16_t>(u16(rng)));
    float a = real(rng), b = real(rng);
    if (i % 2 == 1) b = a;
    c.min_p = std::min(a, b);
    c.max_p = std::max(a, b);
    for (std::size_t j = 0; j < rows * c.k; ++j) c.basis_q.push_back(static_cast<std::int16_t>(i16(rng)));
    for (std::size_t j = 0; j < c.k * c.cols; ++j) c.proj_q.push_back(static_cast<std::uint8_t>(u8(rng)));
    p.codes.push_back(std::move(c));
  }
  return p;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("kltsteg_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace kltsteg::testing
