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

#include "kltsteg/lsb.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "kltsteg/dsp/kernels.hpp"
#include "kltsteg/errors.hpp"
#include "kltsteg/payload.hpp"

namespace kltsteg {
namespace {

Bitstream PreambleBits(const Preamble& p) {
  Bitstream bits;
  bits.push_bits(p.magic, 16);
  bits.push_bits(p.version, 8);
  bits.push_bits(p.bits_per_channel, 8);
  bits.push_bits(p.reserved, 8);
  return bits;
}

// One b-bit group per channel, MSB-first from the stream. A trailing partial
// group is left to the caller.
std::vector<std::uint8_t> ToGroups(const Bitstream& bits, unsigned b) {
  const std::size_t groups = bits.size() / b;
  const std::uint8_t mask = static_cast<std::uint8_t>((1u << b) - 1u);
  std::vector<std::uint8_t> out(groups);
  const auto bytes = bits.bytes();
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t bit = g * b;
    const unsigned shift = 8 - b - static_cast<unsigned>(bit & 7);
    out[g] = static_cast<std::uint8_t>((bytes[bit >> 3] >> shift) & mask);
  }
  return out;
}

void SubstituteInto(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst,
                    const Bitstream& bits, unsigned b) {
  const auto& kernels = dsp::active_kernels();
  const std::vector<std::uint8_t> groups = ToGroups(bits, b);
  const std::uint8_t mask = static_cast<std::uint8_t>((1u << b) - 1u);
  kernels.substitute_low_bits(src.data(), groups.data(), mask, dst.data(), groups.size());
  const std::size_t tail = bits.size() % b;
  if (tail != 0) {
    // Stream ends inside a channel: replace only the top `tail` of its b bits.
    std::uint8_t value = 0;
    for (std::size_t i = bits.size() - tail; i < bits.size(); ++i) {
      value = static_cast<std::uint8_t>((value << 1) | (bits.bit(i) ? 1 : 0));
    }
    const unsigned shift = b - static_cast<unsigned>(tail);
    const std::uint8_t tail_mask = static_cast<std::uint8_t>(((1u << tail) - 1u) << shift);
    const std::size_t at = groups.size();
    dst[at] = static_cast<std::uint8_t>((src[at] & ~tail_mask) | (value << shift));
  }
}

std::size_t ChannelsNeeded(std::size_t bits, unsigned b) { return (bits + b - 1) / b; }

}  // namespace

void substitute_bits(std::span<std::uint8_t> channels, const Bitstream& bits,
                     BitsPerChannel b) {
  if (ChannelsNeeded(bits.size(), b.value()) > channels.size()) {
    throw CapacityError(bits.size(), channels.size() * b.value(),
                        "not enough channels for the bit stream");
  }
  SubstituteInto(channels, channels, bits, b.value());
}

RgbRaster embed_bits(const RgbRaster& carrier, const Bitstream& bits, BitsPerChannel b) {
  const std::uint64_t available = capacity_bits(carrier.width(), carrier.height(), b);
  if (bits.size() > available) {
    throw CapacityError(bits.size(), available,
                        "payload needs " + std::to_string(bits.size()) +
                            " bits but the carrier holds " + std::to_string(available) +
                            " at " + std::to_string(b.value()) + " bit(s) per channel");
  }
  RgbRaster stego = carrier;
  const auto src = carrier.channels();
  const auto dst = stego.channels();
  Preamble preamble;
  preamble.bits_per_channel = static_cast<std::uint8_t>(b.value());
  SubstituteInto(src.first(kPreambleChannels), dst.first(kPreambleChannels),
                 PreambleBits(preamble), 1);
  SubstituteInto(src.subspan(kPreambleChannels), dst.subspan(kPreambleChannels), bits,
                 b.value());
  return stego;
}

Preamble read_preamble(const RgbRaster& stego) {
  if (stego.channel_count() < kPreambleChannels) {
    throw CapacityError(kPreambleChannels, stego.channel_count(),
                        "image too small to contain a preamble");
  }
  const auto ch = stego.channels();
  std::uint64_t raw = 0;
  for (std::size_t i = 0; i < kPreambleChannels; ++i) raw = (raw << 1) | (ch[i] & 1u);
  Preamble p;
  p.magic = static_cast<std::uint16_t>(raw >> 24);
  p.version = static_cast<std::uint8_t>(raw >> 16);
  p.bits_per_channel = static_cast<std::uint8_t>(raw >> 8);
  p.reserved = static_cast<std::uint8_t>(raw);
  return p;
}

BitsPerChannel validate_preamble(const Preamble& p) {
  if (p.magic != kPreambleMagic) {
    throw Error(ErrorKind::kMagicMismatch, "no embedded payload (preamble magic mismatch)");
  }
  if (p.version != kPreambleVersion) {
    throw Error(ErrorKind::kUnsupportedVersion,
                "unsupported payload version " + std::to_string(p.version));
  }
  if (!BitsPerChannel::is_valid(p.bits_per_channel)) {
    throw Error(ErrorKind::kUnsupportedVersion,
                "preamble declares invalid bits per channel " +
                    std::to_string(p.bits_per_channel));
  }
  return BitsPerChannel(p.bits_per_channel);
}

ExtractedBits extract_bits(const RgbRaster& stego, std::optional<std::size_t> count) {
  const BitsPerChannel b = validate_preamble(read_preamble(stego));
  const std::uint64_t available = capacity_bits(stego.width(), stego.height(), b);
  const std::size_t wanted = count.value_or(available);
  if (wanted > available) {
    throw CapacityError(wanted, available, "requested more bits than the image holds");
  }
  const auto body = stego.channels().subspan(kPreambleChannels);
  const std::size_t channels = ChannelsNeeded(wanted, b.value());
  std::vector<std::uint8_t> groups(channels);
  dsp::active_kernels().extract_low_bits(body.data(), b.mask(), groups.data(), channels);

  std::vector<std::uint8_t> bytes((wanted + 7) / 8, 0);
  const unsigned w = b.value();
  for (std::size_t g = 0; g < channels; ++g) {
    const std::size_t bit = g * w;
    const unsigned shift = 8 - w - static_cast<unsigned>(bit & 7);
    bytes[bit >> 3] = static_cast<std::uint8_t>(bytes[bit >> 3] | (groups[g] << shift));
  }
  return {Bitstream(std::move(bytes), wanted), b};
}

}  // namespace kltsteg
