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
#include <span>
#include <vector>

namespace kltsteg {

// Bit sequence packed MSB-first into bytes. Multi-bit fields are appended
// most significant bit first.
class Bitstream {
 public:
  Bitstream() = default;
  Bitstream(std::vector<std::uint8_t> bytes, std::size_t bit_count);

  std::size_t size() const noexcept { return bit_count_; }
  bool empty() const noexcept { return bit_count_ == 0; }

  bool bit(std::size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }
  void push_bit(bool b);
  // Appends the low `width` bits of value (width <= 64), MSB first.
  void push_bits(std::uint64_t value, unsigned width);

  // First `count` bits.
  Bitstream prefix(std::size_t count) const;

  // Packed bytes; padding bits of the last byte are zero.
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  bool operator==(const Bitstream&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

// Sequential MSB-first reader. Reading past the end throws kCorruptPayload.
class BitReader {
 public:
  explicit BitReader(const Bitstream& bits) : bits_(bits) {}

  std::uint64_t read(unsigned width);
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_.size() - pos_; }

 private:
  const Bitstream& bits_;
  std::size_t pos_ = 0;
};

}  // namespace kltsteg
