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

namespace kltsteg {

// Number of low bits replaced per carrier channel: 1, 2 or 4.
class BitsPerChannel {
 public:
  // Throws kInvalidArgument for any other value.
  explicit BitsPerChannel(unsigned bits);

  static bool is_valid(unsigned bits) { return bits == 1 || bits == 2 || bits == 4; }

  unsigned value() const noexcept { return bits_; }
  std::uint8_t mask() const noexcept {
    return static_cast<std::uint8_t>((1u << bits_) - 1u);
  }
  unsigned max_distortion() const noexcept { return (1u << bits_) - 1u; }

  bool operator==(const BitsPerChannel&) const = default;

 private:
  unsigned bits_;
};

}  // namespace kltsteg
