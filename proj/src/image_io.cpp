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

#include "kltsteg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

#include <unistd.h>

#include "kltsteg/errors.hpp"

namespace kltsteg {
namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G',
                                           '\r', '\n', 0x1A, '\n'};

[[noreturn]] void ThrowDecode(const std::string& what) {
  throw Error(ErrorKind::kDecode, what);
}

// ---------------------------------------------------------------------------
// PNG

struct PngReadSource {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t offset;
  char message[256];
};

void PngReadCallback(png_structp png, png_bytep out, png_size_t length) {
  auto* src = static_cast<PngReadSource*>(png_get_io_ptr(png));
  if (src->size - src->offset < length) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(out, src->data + src->offset, length);
  src->offset += length;
}

void PngErrorCallback(png_structp png, png_const_charp message) {
  auto* src = static_cast<PngReadSource*>(png_get_error_ptr(png));
  std::snprintf(src->message, sizeof(src->message), "%s", message);
  png_longjmp(png, 1);
}

void PngWarningCallback(png_structp, png_const_charp) {}

RgbRaster DecodePng(std::span<const std::uint8_t> bytes) {
  PngReadSource src{bytes.data(), bytes.size(), 0, {}};
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &src,
                                           PngErrorCallback, PngWarningCallback);
  if (png == nullptr) ThrowDecode("cannot allocate PNG decoder");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    ThrowDecode("cannot allocate PNG decoder");
  }

  // Sized after the header is read; nothing with a destructor is created
  // between setjmp and the point where libpng may jump back.
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0;
  png_uint_32 height = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    ThrowDecode(std::string("invalid PNG: ") + src.message);
  }

  png_set_read_fn(png, &src, PngReadCallback);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  if (png_get_channels(png, info) != 3 ||
      png_get_rowbytes(png, info) != static_cast<png_size_t>(width) * 3) {
    png_error(png, "unsupported PNG pixel layout");
  }

  pixels.resize(static_cast<std::size_t>(width) * height * 3);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return RgbRaster(width, height, std::move(pixels));
}

struct PngWriteSink {
  std::vector<std::uint8_t>* out;
  char message[256];
};

void PngWriteCallback(png_structp png, png_bytep data, png_size_t length) {
  auto* sink = static_cast<PngWriteSink*>(png_get_io_ptr(png));
  sink->out->insert(sink->out->end(), data, data + length);
}

void PngFlushCallback(png_structp) {}

void PngWriteErrorCallback(png_structp png, png_const_charp message) {
  auto* sink = static_cast<PngWriteSink*>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof(sink->message), "%s", message);
  png_longjmp(png, 1);
}

std::vector<std::uint8_t> EncodePng(const RgbRaster& raster) {
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows(raster.height());
  PngWriteSink sink{&out, {}};
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, &sink, PngWriteErrorCallback, PngWarningCallback);
  if (png == nullptr) throw Error(ErrorKind::kIo, "cannot allocate PNG encoder");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorKind::kIo, "cannot allocate PNG encoder");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorKind::kIo, std::string("PNG encode failed: ") + sink.message);
  }
  png_set_write_fn(png, &sink, PngWriteCallback, PngFlushCallback);
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width()),
               static_cast<png_uint_32>(raster.height()), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  // libpng takes non-const row pointers but does not modify them on write.
  auto* base = const_cast<std::uint8_t*>(raster.channels().data());
  for (std::size_t y = 0; y < raster.height(); ++y) {
    rows[y] = base + y * raster.width() * 3;
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

// ---------------------------------------------------------------------------
// BMP

std::uint32_t ReadLe32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 |
         static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t ReadLe16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

void PutLe32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutLe16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

RgbRaster DecodeBmp(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 54) ThrowDecode("BMP too short");
  const std::uint32_t data_offset = ReadLe32(bytes, 10);
  const std::uint32_t dib_size = ReadLe32(bytes, 14);
  if (dib_size < 40 || 14 + static_cast<std::size_t>(dib_size) > bytes.size()) {
    ThrowDecode("unsupported BMP header");
  }
  const auto raw_width = static_cast<std::int32_t>(ReadLe32(bytes, 18));
  const auto raw_height = static_cast<std::int32_t>(ReadLe32(bytes, 22));
  const std::uint16_t bpp = ReadLe16(bytes, 28);
  const std::uint32_t compression = ReadLe32(bytes, 30);
  std::uint32_t palette_size = ReadLe32(bytes, 46);

  if (raw_width <= 0 || raw_height == 0 || raw_height == INT32_MIN) {
    ThrowDecode("invalid BMP dimensions");
  }
  if (bpp != 8 && bpp != 24 && bpp != 32) ThrowDecode("unsupported BMP depth");
  // BI_BITFIELDS is only accepted for 32-bit images with the default BGRA masks.
  if (compression == 3) {
    if (bpp != 32 || dib_size < 52 || ReadLe32(bytes, 54) != 0x00FF0000u ||
        ReadLe32(bytes, 58) != 0x0000FF00u || ReadLe32(bytes, 62) != 0x000000FFu) {
      ThrowDecode("unsupported BMP bitfields");
    }
  } else if (compression != 0) {
    ThrowDecode("compressed BMP not supported");
  }

  const std::size_t width = static_cast<std::size_t>(raw_width);
  const bool top_down = raw_height < 0;
  const std::size_t height =
      static_cast<std::size_t>(top_down ? -static_cast<std::int64_t>(raw_height)
                                        : raw_height);
  const std::size_t stride = (width * bpp / 8 + 3) & ~std::size_t{3};
  if (data_offset > bytes.size() || (bytes.size() - data_offset) / stride < height) {
    ThrowDecode("truncated BMP pixel data");
  }

  std::vector<std::uint8_t> palette;
  if (bpp == 8) {
    if (palette_size == 0) palette_size = 256;
    const std::size_t palette_at = 14 + dib_size;
    if (palette_size > 256 || palette_at + 4 * palette_size > data_offset) {
      ThrowDecode("invalid BMP palette");
    }
    palette.assign(bytes.begin() + palette_at,
                   bytes.begin() + palette_at + 4 * palette_size);
  }

  std::vector<std::uint8_t> channels(width * height * 3);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t src_row = top_down ? y : height - 1 - y;
    const std::uint8_t* src = bytes.data() + data_offset + src_row * stride;
    std::uint8_t* dst = channels.data() + y * width * 3;
    for (std::size_t x = 0; x < width; ++x) {
      const std::uint8_t* bgr;
      if (bpp == 8) {
        const std::size_t index = src[x];
        if (index >= palette_size) ThrowDecode("BMP palette index out of range");
        bgr = palette.data() + 4 * index;
      } else {
        bgr = src + x * (bpp / 8);
      }
      dst[3 * x + 0] = bgr[2];
      dst[3 * x + 1] = bgr[1];
      dst[3 * x + 2] = bgr[0];
    }
  }
  return RgbRaster(width, height, std::move(channels));
}

std::vector<std::uint8_t> EncodeBmp(const RgbRaster& raster) {
  const std::size_t width = raster.width();
  const std::size_t height = raster.height();
  const std::size_t stride = (width * 3 + 3) & ~std::size_t{3};
  const std::size_t image_size = stride * height;
  std::vector<std::uint8_t> out;
  out.reserve(54 + image_size);
  out.push_back('B');
  out.push_back('M');
  PutLe32(out, static_cast<std::uint32_t>(54 + image_size));
  PutLe32(out, 0);
  PutLe32(out, 54);
  PutLe32(out, 40);
  PutLe32(out, static_cast<std::uint32_t>(width));
  PutLe32(out, static_cast<std::uint32_t>(height));
  PutLe16(out, 1);
  PutLe16(out, 24);
  PutLe32(out, 0);
  PutLe32(out, static_cast<std::uint32_t>(image_size));
  PutLe32(out, 2835);
  PutLe32(out, 2835);
  PutLe32(out, 0);
  PutLe32(out, 0);
  const auto channels = raster.channels();
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t y = height - 1 - row;
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t at = (y * width + x) * 3;
      out.push_back(channels[at + 2]);
      out.push_back(channels[at + 1]);
      out.push_back(channels[at + 0]);
    }
    out.resize(out.size() + (stride - width * 3), 0);
  }
  return out;
}

}  // namespace

RgbRaster decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= sizeof(kPngSignature) &&
      std::equal(std::begin(kPngSignature), std::end(kPngSignature), bytes.begin())) {
    return DecodePng(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
    return DecodeBmp(bytes);
  }
  ThrowDecode("unrecognized image format (expected PNG or BMP)");
}

RgbRaster load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

ImageFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".bmp" ? ImageFormat::kBmp : ImageFormat::kPng;
}

std::vector<std::uint8_t> encode_image(const RgbRaster& raster,
                                       ImageFormat format) {
  if (raster.width() == 0 || raster.height() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "cannot encode an empty raster");
  }
  return format == ImageFormat::kBmp ? EncodeBmp(raster) : EncodePng(raster);
}

void write_file_atomically(const std::filesystem::path& path,
                           std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorKind::kIo, "cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorKind::kIo, "cannot write " + path.string() + ": " + ec.message());
  }
}

void save_image(const RgbRaster& raster, const std::filesystem::path& path) {
  write_file_atomically(path, encode_image(raster, format_for_path(path)));
}

}  // namespace kltsteg
