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
#include <vector>

#include "kltsteg/bit_depth.hpp"
#include "kltsteg/bitstream.hpp"
#include "kltsteg/klt.hpp"
#include "kltsteg/lsb.hpp"
#include "kltsteg/payload.hpp"
#include "kltsteg/raster.hpp"

namespace kltsteg {

struct EmbedConfig {
  BitsPerChannel bits{1};
  std::size_t segment_rows = 4;
  RankPolicy rank = EnergyFraction{0.95};
};

// Segment encode/decode fan-out. Results do not depend on the thread count.
struct ExecutionOptions {
  unsigned threads = 1;
};

struct HideReport {
  std::size_t message_width = 0;
  std::size_t message_height = 0;
  std::size_t segment_rows = 0;
  unsigned bits_per_channel = 0;
  std::size_t num_segments = 0;
  std::vector<std::size_t> ranks;
  std::size_t k_total = 0;
  std::uint64_t payload_bits = 0;
  std::uint64_t capacity_bits = 0;
  CompressionRates rates;
  double hide_ms = 0.0;
  Bitstream payload;
};

struct HideResult {
  RgbRaster stego;
  HideReport report;
};

struct RevealReport {
  std::size_t message_width = 0;
  std::size_t message_height = 0;
  std::size_t segment_rows = 0;
  unsigned bits_per_channel = 0;
  std::size_t num_segments = 0;
  std::vector<std::size_t> ranks;
  std::size_t k_total = 0;
  std::uint64_t payload_bits = 0;
  double reveal_ms = 0.0;
  Bitstream payload;  // exactly the bits consumed from the stego image
};

struct RevealResult {
  RgbRaster message;
  RevealReport report;
};

StegoPayload encode_message(const RgbRaster& message, const EmbedConfig& config,
                            const ExecutionOptions& exec = {});
RgbRaster decode_message(const StegoPayload& payload, const ExecutionOptions& exec = {});

// Throws CapacityError (with a suggested --bits / --rank) when the payload
// does not fit the carrier.
HideResult hide(const RgbRaster& carrier, const RgbRaster& message,
                const EmbedConfig& config, const ExecutionOptions& exec = {});

// Throws kMagicMismatch, kUnsupportedVersion or kCorruptPayload.
RevealResult reveal(const RgbRaster& stego, const ExecutionOptions& exec = {});

struct InspectReport {
  Preamble preamble;
  PayloadHeader header;
  std::vector<std::size_t> ranks;
  std::uint64_t payload_bits = 0;
  std::uint64_t capacity_bits = 0;
};

// Reads preamble and payload structure without reconstructing the message.
InspectReport inspect(const RgbRaster& stego);

// Largest uniform rank cap K such that min(k_j, K) ranks fit `available`
// bits, or 0 if even K = 1 does not fit.
std::size_t largest_fitting_rank(const std::vector<std::size_t>& ranks,
                                 std::size_t segment_rows, std::size_t cols,
                                 std::uint64_t available);

}  // namespace kltsteg
