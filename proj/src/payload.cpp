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

#include "kltsteg/payload.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "kltsteg/errors.hpp"
#include "kltsteg/segmenter.hpp"

namespace kltsteg {

BitsPerChannel::BitsPerChannel(unsigned bits) : bits_(bits) {
  if (!is_valid(bits)) {
    throw Error(ErrorKind::kInvalidArgument,
                "bits per channel must be 1, 2 or 4 (got " + std::to_string(bits) + ")");
  }
}

namespace {

void CheckField(std::size_t value, const char* name) {
  if (value > kMaxField) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(name) + " = " + std::to_string(value) +
                    " overflows its 16-bit field");
  }
}

void CheckPayload(const StegoPayload& p) {
  CheckField(p.message_height, "message height");
  CheckField(p.message_width, "message width");
  CheckField(p.segment_rows, "segment rows");
  CheckField(p.num_segments, "segment count");
  if (p.message_height == 0 || p.message_width == 0 || p.segment_rows == 0) {
    throw Error(ErrorKind::kInvalidArgument, "payload geometry must be positive");
  }
  if (p.num_segments != segment_count(p.message_height, p.segment_rows) ||
      p.codes.size() != p.num_segments) {
    throw Error(ErrorKind::kInvalidArgument, "segment count does not match geometry");
  }
  const std::size_t rows = 3 * p.segment_rows;
  for (const SegmentCode& code : p.codes) {
    CheckField(code.k, "rank");
    if (code.rows != rows || code.cols != p.message_width) {
      throw Error(ErrorKind::kInvalidArgument, "segment code shape does not match payload");
    }
    if (code.k == 0 || code.k > rows) {
      throw Error(ErrorKind::kInvalidArgument, "segment rank out of range");
    }
    if (code.mean_q.size() != rows || code.basis_q.size() != rows * code.k ||
        code.proj_q.size() != code.k * code.cols) {
      throw Error(ErrorKind::kInvalidArgument, "segment code arrays have wrong sizes");
    }
    if (!(code.min_p <= code.max_p)) {
      throw Error(ErrorKind::kInvalidArgument, "segment code has min_p > max_p");
    }
  }
}

[[noreturn]] void Corrupt(const std::string& what) {
  throw Error(ErrorKind::kCorruptPayload, what);
}

}  // namespace

std::uint64_t payload_bit_length(const StegoPayload& payload) {
  std::size_t k_total = 0;
  for (const SegmentCode& code : payload.codes) k_total += code.k;
  return payload_bit_length(payload.segment_rows, payload.message_width,
                            payload.num_segments, k_total);
}

Bitstream serialize(const StegoPayload& payload) {
  CheckPayload(payload);
  Bitstream out;
  out.push_bits(payload.message_height, 16);
  out.push_bits(payload.message_width, 16);
  out.push_bits(payload.segment_rows, 16);
  out.push_bits(payload.num_segments, 16);
  for (const SegmentCode& code : payload.codes) {
    out.push_bits(code.k, 16);
    for (std::uint16_t v : code.mean_q) out.push_bits(v, 16);
    out.push_bits(std::bit_cast<std::uint32_t>(code.min_p), 32);
    out.push_bits(std::bit_cast<std::uint32_t>(code.max_p), 32);
    for (std::int16_t v : code.basis_q) out.push_bits(static_cast<std::uint16_t>(v), 16);
    for (std::uint8_t v : code.proj_q) out.push_bits(v, 8);
  }
  return out;
}

PayloadHeader parse_header(const Bitstream& bits) {
  BitReader reader(bits);
  PayloadHeader h;
  h.message_height = reader.read(16);
  h.message_width = reader.read(16);
  h.segment_rows = reader.read(16);
  h.num_segments = reader.read(16);
  if (h.message_height == 0 || h.message_width == 0 || h.segment_rows == 0) {
    Corrupt("payload header has a zero dimension");
  }
  if (h.num_segments != segment_count(h.message_height, h.segment_rows)) {
    Corrupt("payload header segment count " + std::to_string(h.num_segments) +
            " does not match ceil(m/s) = " +
            std::to_string(segment_count(h.message_height, h.segment_rows)));
  }
  if (3 * h.segment_rows > kMaxField) Corrupt("segment rows too large");
  return h;
}

ParsedPayload parse_payload(const Bitstream& bits) {
  const PayloadHeader h = parse_header(bits);
  BitReader reader(bits);
  reader.read(kHeaderBits);

  ParsedPayload out;
  StegoPayload& p = out.payload;
  p.message_height = h.message_height;
  p.message_width = h.message_width;
  p.segment_rows = h.segment_rows;
  p.num_segments = h.num_segments;
  const std::size_t rows = 3 * h.segment_rows;
  const std::size_t n = h.message_width;
  // Per-segment size bounds the allocation before anything is read, so a
  // damaged header cannot trigger a huge reservation.
  if (reader.remaining() / (16 + rows * 16 + 64) < h.num_segments) {
    Corrupt("truncated stream: too short for " + std::to_string(h.num_segments) +
            " segments");
  }
  p.codes.reserve(h.num_segments);
  for (std::size_t j = 0; j < h.num_segments; ++j) {
    SegmentCode code;
    code.rows = rows;
    code.cols = n;
    code.k = reader.read(16);
    if (code.k == 0 || code.k > rows) {
      Corrupt("segment " + std::to_string(j) + " rank " + std::to_string(code.k) +
              " outside [1, " + std::to_string(rows) + "]");
    }
    const std::uint64_t body = rows * 16 + 64 + rows * code.k * 16 + code.k * n * 8;
    if (reader.remaining() < body) {
      Corrupt("truncated stream in segment " + std::to_string(j));
    }
    code.mean_q.resize(rows);
    for (auto& v : code.mean_q) v = static_cast<std::uint16_t>(reader.read(16));
    code.min_p = std::bit_cast<float>(static_cast<std::uint32_t>(reader.read(32)));
    code.max_p = std::bit_cast<float>(static_cast<std::uint32_t>(reader.read(32)));
    if (!std::isfinite(code.min_p) || !std::isfinite(code.max_p) ||
        code.min_p > code.max_p) {
      Corrupt("segment " + std::to_string(j) + " has an invalid projection range");
    }
    code.basis_q.resize(rows * code.k);
    for (auto& v : code.basis_q) {
      v = static_cast<std::int16_t>(static_cast<std::uint16_t>(reader.read(16)));
      if (v < -32767) Corrupt("basis entry out of range");
    }
    code.proj_q.resize(code.k * n);
    for (auto& v : code.proj_q) v = static_cast<std::uint8_t>(reader.read(8));
    p.codes.push_back(std::move(code));
  }
  out.bit_length = reader.position();
  return out;
}

StegoPayload deserialize(const Bitstream& bits) { return parse_payload(bits).payload; }

std::uint64_t capacity_bits(std::size_t width, std::size_t height, BitsPerChannel bits) {
  const std::uint64_t channels = 3 * static_cast<std::uint64_t>(width) * height;
  if (channels < kPreambleChannels) {
    throw CapacityError(kPreambleChannels, channels,
                        "carrier has " + std::to_string(channels) +
                            " channels; the preamble alone needs 40");
  }
  return (channels - kPreambleChannels) * bits.value();
}

}  // namespace kltsteg
