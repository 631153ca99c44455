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

#include "kltsteg/bitstream.hpp"

#include <string>
#include <utility>

#include "kltsteg/errors.hpp"

namespace kltsteg {

Bitstream::Bitstream(std::vector<std::uint8_t> bytes, std::size_t bit_count)
    : bytes_(std::move(bytes)), bit_count_(bit_count) {
  if ((bit_count_ + 7) / 8 != bytes_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "bit count does not match byte count");
  }
  if (bit_count_ % 8 != 0) {
    bytes_.back() &= static_cast<std::uint8_t>(0xFF00u >> (bit_count_ % 8));
  }
}

void Bitstream::push_bit(bool b) {
  if ((bit_count_ & 7) == 0) bytes_.push_back(0);
  if (b) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count_ & 7));
  ++bit_count_;
}

void Bitstream::push_bits(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) push_bit((value >> i) & 1u);
}

Bitstream Bitstream::prefix(std::size_t count) const {
  if (count > bit_count_) {
    throw Error(ErrorKind::kInvalidArgument, "prefix longer than stream");
  }
  std::vector<std::uint8_t> head(bytes_.begin(),
                                 bytes_.begin() + static_cast<std::ptrdiff_t>((count + 7) / 8));
  return Bitstream(std::move(head), count);
}

std::uint64_t BitReader::read(unsigned width) {
  if (width > remaining()) {
    throw Error(ErrorKind::kCorruptPayload,
                "truncated stream: need " + std::to_string(width) + " bits at offset " +
                    std::to_string(pos_) + ", " + std::to_string(remaining()) +
                    " remain");
  }
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) value = (value << 1) | (bits_.bit(pos_++) ? 1u : 0u);
  return value;
}

}  // namespace kltsteg
