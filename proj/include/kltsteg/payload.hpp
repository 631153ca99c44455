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

// Wire format of the hidden payload (all fields big-endian, MSB first):
//
//   m(16) n(16) s(16) num_segments(16)
//   per segment:
//     k(16)
//     mean_q      3s x 16   8.8 fixed point
//     min_p       32        IEEE 754 single, raw bit pattern
//     max_p       32
//     basis_q     3s*k x 16 two's complement, column-major
//     proj_q      k*n x 8   row-major
//
// docs/wire_format.md is the normative description.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kltsteg/bit_depth.hpp"
#include "kltsteg/bitstream.hpp"
#include "kltsteg/klt.hpp"

namespace kltsteg {

inline constexpr unsigned kHeaderBits = 64;
inline constexpr std::size_t kMaxField = 0xFFFF;

struct StegoPayload {
  std::size_t message_height = 0;  // m
  std::size_t message_width = 0;   // n
  std::size_t segment_rows = 0;    // s
  std::size_t num_segments = 0;
  std::vector<SegmentCode> codes;

  bool operator==(const StegoPayload&) const = default;
};

// Length in bits of a payload with the given geometry and total rank.
constexpr std::uint64_t payload_bit_length(std::size_t segment_rows, std::size_t cols,
                                           std::size_t num_segments,
                                           std::size_t k_total) {
  const std::uint64_t rows = 3 * static_cast<std::uint64_t>(segment_rows);
  const std::uint64_t fixed = 16 + rows * 16 + 32 + 32;
  const std::uint64_t per_rank = rows * 16 + static_cast<std::uint64_t>(cols) * 8;
  return kHeaderBits + num_segments * fixed + k_total * per_rank;
}

std::uint64_t payload_bit_length(const StegoPayload& payload);

// Throws kInvalidArgument when a field exceeds 16 bits or the payload's
// invariants do not hold.
Bitstream serialize(const StegoPayload& payload);

struct ParsedPayload {
  StegoPayload payload;
  std::size_t bit_length = 0;  // bits consumed from the stream
};

// Parses one payload from the front of `bits`; trailing bits are ignored.
// Throws kCorruptPayload on truncation or any invariant violation.
ParsedPayload parse_payload(const Bitstream& bits);
StegoPayload deserialize(const Bitstream& bits);

// Header fields only (first 64 bits), validated for consistency.
struct PayloadHeader {
  std::size_t message_height = 0;
  std::size_t message_width = 0;
  std::size_t segment_rows = 0;
  std::size_t num_segments = 0;
};
PayloadHeader parse_header(const Bitstream& bits);

inline constexpr std::size_t kPreambleChannels = 40;

// Body capacity of a carrier after the preamble: (3wh - 40) * b bits.
// Throws CapacityError when the carrier has fewer than 40 channels.
std::uint64_t capacity_bits(std::size_t width, std::size_t height, BitsPerChannel bits);

}  // namespace kltsteg
