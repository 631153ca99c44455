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
#include "kltsteg/segmenter.hpp"
#include "test_util.hpp"

using namespace kltsteg;

namespace {

// Pixel row i of the matrix has every entry equal to 10*i + c (c = channel).
PlaneMatrix LabelledRows(std::size_t m, std::size_t n) {
  std::vector<std::uint8_t> v;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t j = 0; j < n; ++j) v.push_back(static_cast<std::uint8_t>(10 * i + c));
  return PlaneMatrix(3 * m, n, v);
}

}  // namespace

TEST_CASE("pad_rows leaves exact multiples unchanged") {
  const PlaneMatrix m = LabelledRows(4, 3);
  const PaddedMatrix p = pad_rows(m, 2);
  CHECK(p.original_pixel_rows == 4);
  CHECK(p.matrix == m);
}

TEST_CASE("pad_rows replicates the last pixel row as a unit") {
  const PaddedMatrix p = pad_rows(LabelledRows(3, 2), 2);
  CHECK(p.original_pixel_rows == 3);
  REQUIRE(p.matrix.rows() == 12);
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(p.matrix.at(9 + c, 0) == 20 + c);
    CHECK(p.matrix.at(9 + c, 1) == 20 + c);
  }

  const PaddedMatrix q = pad_rows(LabelledRows(1, 2), 4);
  REQUIRE(q.matrix.rows() == 12);
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t c = 0; c < 3; ++c) CHECK(q.matrix.at(3 * i + c, 1) == c);
}

TEST_CASE("pad_rows rejects s = 0") {
  CHECK_THROWS_AS(pad_rows(LabelledRows(2, 2), 0), Error);
}

TEST_CASE("split_segments partitions into 3s-row bands") {
  std::mt19937_64 rng(41);
  const PlaneMatrix m = testing::RandomPlane(rng, 6, 2);
  const auto s1 = split_segments(m, 1);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0].matrix.rows() == 3);
  CHECK(s1[1].index == 1);
  CHECK(s1[1].matrix.at(0, 1) == m.at(3, 1));

  const auto s2 = split_segments(m, 2);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].matrix == m);

  CHECK_THROWS_AS(split_segments(m, 4), Error);
}

TEST_CASE("join_segments restores any padded split") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> dim(1, 17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng), s = dim(rng) % 6 + 1;
    const PlaneMatrix plane = testing::RandomPlane(rng, 3 * m, n);
    const PaddedMatrix padded = pad_rows(plane, s);
    const auto segments = split_segments(padded.matrix, s);
    CHECK(segments.size() == segment_count(m, s));
    CHECK(join_segments(segments, padded.original_pixel_rows) == plane);
    CHECK(join_segments(segments, padded.matrix.pixel_rows()) == padded.matrix);
  }
}

TEST_CASE("join_segments truncates the padded case m=3, s=2 to 9 rows") {
  const PaddedMatrix p = pad_rows(LabelledRows(3, 2), 2);
  const PlaneMatrix joined = join_segments(split_segments(p.matrix, 2), 3);
  CHECK(joined.rows() == 9);
  CHECK(joined == LabelledRows(3, 2));
}

TEST_CASE("join_segments validates shapes and indices") {
  std::mt19937_64 rng(43);
  auto segs = split_segments(testing::RandomPlane(rng, 12, 4), 2);
  CHECK(join_segments({segs[0]}, 2) == segs[0].matrix);

  auto missing = segs;
  missing[1].index = 5;
  CHECK_THROWS_AS(join_segments(missing, 4), Error);

  auto mismatched = segs;
  mismatched[1].matrix = testing::RandomPlane(rng, 6, 3);
  CHECK_THROWS_AS(join_segments(mismatched, 4), Error);

  // Out-of-order storage is fine as long as indices are consecutive.
  std::swap(segs[0], segs[1]);
  CHECK(join_segments(segs, 4).row(0)[0] == segs[1].matrix.row(0)[0]);
  CHECK_THROWS_AS(join_segments({}, 1), Error);
}
