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

#include <doctest.h>

#include <random>

#include "kltsteg/errors.hpp"
#include "kltsteg/raster.hpp"
#include "test_util.hpp"

using namespace kltsteg;

TEST_CASE("raster validates its channel count") {
  CHECK_THROWS_AS(RgbRaster(2, 2, std::vector<std::uint8_t>(11)), Error);
  CHECK_NOTHROW(RgbRaster(2, 2, std::vector<std::uint8_t>(12)));
  CHECK(RgbRaster(3, 5).channel_count() == 45);
}

TEST_CASE("1x1 raster unrolls to a 3x1 plane matrix") {
  const RgbRaster r(1, 1, {10, 20, 30});
  const PlaneMatrix m = to_plane_matrix(r);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 1);
  CHECK(m.at(0, 0) == 10);
  CHECK(m.at(1, 0) == 20);
  CHECK(m.at(2, 0) == 30);
  CHECK(from_plane_matrix(PlaneMatrix(3, 1, {10, 20, 30})) == r);
}

TEST_CASE("2x2 raster rows interleave as R1 G1 B1 R2 G2 B2") {
  // pixel (x, y) channel c has value 100*y + 10*x + c
  std::vector<std::uint8_t> ch;
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      for (int c = 0; c < 3; ++c) ch.push_back(static_cast<std::uint8_t>(100 * y + 10 * x + c));
  const PlaneMatrix m = to_plane_matrix(RgbRaster(2, 2, ch));
  REQUIRE(m.rows() == 6);
  REQUIRE(m.cols() == 2);
  for (int i = 0; i < 2; ++i) {
    for (int c = 0; c < 3; ++c) {
      for (int j = 0; j < 2; ++j) {
        CHECK(m.at(3 * i + c, j) == 100 * i + 10 * j + c);
      }
    }
  }
}

TEST_CASE("plane matrix rejects row counts that are not multiples of 3") {
  try {
    PlaneMatrix(4, 1, std::vector<std::uint8_t>(4));
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDimensionMismatch);
  }
}

TEST_CASE("to/from plane matrix are mutual inverses on random input") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t w = dim(rng), h = dim(rng);
    const RgbRaster r = testing::RandomRaster(rng, w, h);
    CHECK(from_plane_matrix(to_plane_matrix(r)) == r);
    const PlaneMatrix m = testing::RandomPlane(rng, 3 * h, w);
    CHECK(to_plane_matrix(from_plane_matrix(m)) == m);
  }
}
