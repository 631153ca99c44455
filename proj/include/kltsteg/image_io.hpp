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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "kltsteg/raster.hpp"

namespace kltsteg {

enum class ImageFormat { kPng, kBmp };

// Decodes PNG or BMP (detected from the signature bytes). Grayscale and
// palette images are expanded to RGB, alpha is dropped, 16-bit PNG samples
// are reduced to 8 bits. Throws kIo when the file cannot be read and kDecode
// when its content is not a supported image.
RgbRaster load_image(const std::filesystem::path& path);
RgbRaster decode_image(std::span<const std::uint8_t> bytes);

// Writes an 8-bit RGB file; BMP when the extension is .bmp, PNG otherwise.
// The file is written to a temporary sibling and renamed into place, so a
// failed save never leaves a partial file behind. Throws kIo.
void save_image(const RgbRaster& raster, const std::filesystem::path& path);

std::vector<std::uint8_t> encode_image(const RgbRaster& raster,
                                       ImageFormat format);
ImageFormat format_for_path(const std::filesystem::path& path);

// Replaces `path` with `bytes` via temp file + rename. Throws kIo.
void write_file_atomically(const std::filesystem::path& path,
                           std::span<const std::uint8_t> bytes);

}  // namespace kltsteg
