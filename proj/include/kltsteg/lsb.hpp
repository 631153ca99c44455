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

// LSB substitution. Channels are visited in raster order (R, G, B of pixel 0,
// then pixel 1, ...). Channels 0..39 carry a 40-bit preamble at one bit per
// channel; from channel 40 on each channel carries b payload bits, the first
// stream bit landing in the most significant of the b substituted bits.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "kltsteg/bit_depth.hpp"
#include "kltsteg/bitstream.hpp"
#include "kltsteg/raster.hpp"

namespace kltsteg {

inline constexpr std::uint16_t kPreambleMagic = 0x4B4C;  // "KL"
inline constexpr std::uint8_t kPreambleVersion = 0x01;

struct Preamble {
  std::uint16_t magic = kPreambleMagic;
  std::uint8_t version = kPreambleVersion;
  std::uint8_t bits_per_channel = 1;
  std::uint8_t reserved = 0;
};

// Throws CapacityError when 40 + bits.size()/b channels exceed the carrier.
RgbRaster embed_bits(const RgbRaster& carrier, const Bitstream& bits, BitsPerChannel b);

// Raw preamble fields, unvalidated. Throws CapacityError for carriers with
// fewer than 40 channels.
Preamble read_preamble(const RgbRaster& stego);

// Throws kMagicMismatch or kUnsupportedVersion (also for an invalid b).
BitsPerChannel validate_preamble(const Preamble& preamble);

struct ExtractedBits {
  Bitstream bits;
  BitsPerChannel b;
};

// Reads `count` body bits, or the full body capacity when count is empty.
// Throws as validate_preamble, and CapacityError if count exceeds capacity.
ExtractedBits extract_bits(const RgbRaster& stego,
                           std::optional<std::size_t> count = std::nullopt);

// Raw substitution without a preamble: the low b bits of channels[0],
// channels[1], ... receive the stream in order. Throws CapacityError when the
// span is too short.
void substitute_bits(std::span<std::uint8_t> channels, const Bitstream& bits,
                     BitsPerChannel b);

}  // namespace kltsteg
