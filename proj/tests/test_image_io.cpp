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

#include <png.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <random>

#include "kltsteg/errors.hpp"
#include "kltsteg/image_io.hpp"
#include "test_util.hpp"

using namespace kltsteg;

namespace {

// Minimal libpng writer for arbitrary color types, used to produce inputs the
// library never writes itself (grayscale, alpha, palette).
void WritePng(const std::filesystem::path& path, int width, int height, int color_type,
              const std::vector<std::uint8_t>& pixels, int channels,
              const std::vector<png_color>& palette = {}) {
  FILE* f = std::fopen(path.c_str(), "wb");
  REQUIRE(f != nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  png_init_io(png, f);
  png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  if (!palette.empty()) {
    png_set_PLTE(png, info, palette.data(), static_cast<int>(palette.size()));
  }
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, pixels.data() + static_cast<std::size_t>(y) * width * channels);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(f);
}

void WriteBytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void Le32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}
void Le16(std::vector<std::uint8_t>& v, std::uint16_t x) {
  v.push_back(static_cast<std::uint8_t>(x));
  v.push_back(static_cast<std::uint8_t>(x >> 8));
}

std::vector<std::uint8_t> BmpHeader(std::int32_t w, std::int32_t h, std::uint16_t bpp,
                                    std::uint32_t data_offset, std::uint32_t colors) {
  std::vector<std::uint8_t> v = {'B', 'M'};
  Le32(v, 0);
  Le32(v, 0);
  Le32(v, data_offset);
  Le32(v, 40);
  Le32(v, static_cast<std::uint32_t>(w));
  Le32(v, static_cast<std::uint32_t>(h));
  Le16(v, 1);
  Le16(v, bpp);
  Le32(v, 0);
  Le32(v, 0);
  Le32(v, 2835);
  Le32(v, 2835);
  Le32(v, colors);
  Le32(v, 0);
  return v;
}

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("1x1 white PNG decodes to a single white pixel") {
  testing::TempDir dir;
  WritePng(dir / "white.png", 1, 1, PNG_COLOR_TYPE_RGB, {255, 255, 255}, 3);
  const RgbRaster r = load_image(dir / "white.png");
  CHECK(r.width() == 1);
  CHECK(r.height() == 1);
  CHECK(std::vector<std::uint8_t>(r.channels().begin(), r.channels().end()) ==
        std::vector<std::uint8_t>{255, 255, 255});
}

TEST_CASE("grayscale PNG is expanded by channel replication") {
  testing::TempDir dir;
  WritePng(dir / "gray.png", 2, 1, PNG_COLOR_TYPE_GRAY, {0, 128}, 1);
  const RgbRaster r = load_image(dir / "gray.png");
  CHECK(r.width() == 2);
  CHECK(std::vector<std::uint8_t>(r.channels().begin(), r.channels().end()) ==
        std::vector<std::uint8_t>{0, 0, 0, 128, 128, 128});
}

TEST_CASE("alpha is dropped and palettes are expanded") {
  testing::TempDir dir;
  WritePng(dir / "rgba.png", 2, 1, PNG_COLOR_TYPE_RGBA, {1, 2, 3, 0, 4, 5, 6, 255}, 4);
  const RgbRaster rgba = load_image(dir / "rgba.png");
  CHECK(std::vector<std::uint8_t>(rgba.channels().begin(), rgba.channels().end()) ==
        std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});

  WritePng(dir / "ga.png", 1, 1, PNG_COLOR_TYPE_GRAY_ALPHA, {77, 9}, 2);
  const RgbRaster ga = load_image(dir / "ga.png");
  CHECK(std::vector<std::uint8_t>(ga.channels().begin(), ga.channels().end()) ==
        std::vector<std::uint8_t>{77, 77, 77});

  WritePng(dir / "pal.png", 3, 1, PNG_COLOR_TYPE_PALETTE, {2, 0, 1}, 1,
           {{10, 20, 30}, {40, 50, 60}, {70, 80, 90}});
  const RgbRaster pal = load_image(dir / "pal.png");
  CHECK(std::vector<std::uint8_t>(pal.channels().begin(), pal.channels().end()) ==
        std::vector<std::uint8_t>{70, 80, 90, 10, 20, 30, 40, 50, 60});
}

TEST_CASE("corrupt and unknown files are decode errors, missing files I/O errors") {
  testing::TempDir dir;
  WritePng(dir / "ok.png", 4, 4, PNG_COLOR_TYPE_RGB, std::vector<std::uint8_t>(48, 9), 3);
  std::ifstream in(dir / "ok.png", std::ios::binary);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), {});
  bytes.resize(bytes.size() / 2);
  WriteBytes(dir / "truncated.png", bytes);
  CHECK(KindOf([&] { load_image(dir / "truncated.png"); }) == ErrorKind::kDecode);

  WriteBytes(dir / "garbage.png", {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(KindOf([&] { load_image(dir / "garbage.png"); }) == ErrorKind::kDecode);

  WriteBytes(dir / "short.bmp", {'B', 'M', 0, 0});
  CHECK(KindOf([&] { load_image(dir / "short.bmp"); }) == ErrorKind::kDecode);

  CHECK(KindOf([&] { load_image(dir / "missing.png"); }) == ErrorKind::kIo);
}

TEST_CASE("save then load round trips channel-exactly for PNG and BMP") {
  testing::TempDir dir;
  std::mt19937_64 rng(31);
  const RgbRaster one(1, 1, {7, 8, 9});
  save_image(one, dir / "one.png");
  CHECK(load_image(dir / "one.png") == one);

  const RgbRaster big = testing::RandomRaster(rng, 64, 64);
  save_image(big, dir / "big.png");
  CHECK(load_image(dir / "big.png") == big);
  save_image(big, dir / "big.bmp");
  CHECK(load_image(dir / "big.bmp") == big);

  // Odd widths exercise BMP row padding.
  for (std::size_t w : {1, 2, 3, 5, 7}) {
    const RgbRaster r = testing::RandomRaster(rng, w, 3);
    save_image(r, dir / "odd.BMP");
    CHECK(load_image(dir / "odd.BMP") == r);
  }
}

TEST_CASE("writing into a missing directory is an I/O error and leaves nothing behind") {
  testing::TempDir dir;
  const auto target = dir / "no_such_dir" / "out.png";
  CHECK(KindOf([&] { save_image(RgbRaster(2, 2), target); }) == ErrorKind::kIo);
  CHECK_FALSE(std::filesystem::exists(target));
  CHECK(KindOf([&] { save_image(RgbRaster(2, 2), "/proc/kltsteg_cannot_write.png"); }) ==
        ErrorKind::kIo);
}

TEST_CASE("BMP decoder handles palettes, top-down rows and 32-bit pixels") {
  testing::TempDir dir;
  // 2x1 8-bit palette image
  {
    auto v = BmpHeader(2, 1, 8, 54 + 8, 2);
    for (std::uint8_t b : {30, 20, 10, 0, 60, 50, 40, 0}) v.push_back(b);  // BGRA palette
    for (std::uint8_t b : {1, 0, 0, 0}) v.push_back(b);                    // indices + pad
    WriteBytes(dir / "pal.bmp", v);
    const RgbRaster r = load_image(dir / "pal.bmp");
    CHECK(std::vector<std::uint8_t>(r.channels().begin(), r.channels().end()) ==
          std::vector<std::uint8_t>{40, 50, 60, 10, 20, 30});
  }
  // 1x2 top-down 32-bit image
  {
    auto v = BmpHeader(1, -2, 32, 54, 0);
    for (std::uint8_t b : {3, 2, 1, 255, 6, 5, 4, 255}) v.push_back(b);
    WriteBytes(dir / "td.bmp", v);
    const RgbRaster r = load_image(dir / "td.bmp");
    REQUIRE(r.height() == 2);
    CHECK(std::vector<std::uint8_t>(r.channels().begin(), r.channels().end()) ==
          std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});
  }
  // truncated pixel data
  {
    auto v = BmpHeader(4, 4, 24, 54, 0);
    v.resize(60);
    WriteBytes(dir / "trunc.bmp", v);
    CHECK(KindOf([&] { load_image(dir / "trunc.bmp"); }) == ErrorKind::kDecode);
  }
}
