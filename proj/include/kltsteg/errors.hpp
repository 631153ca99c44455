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
#include <stdexcept>
#include <string>

namespace kltsteg {

enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kIo,
  kDecode,
  kCapacityExceeded,
  kCorruptPayload,
  kMagicMismatch,
  kUnsupportedVersion,
  kNonConvergence,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this type; kind() selects the
// category, what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class CapacityError : public Error {
 public:
  CapacityError(std::uint64_t required_bits, std::uint64_t available_bits,
                const std::string& message);

  std::uint64_t required_bits() const noexcept { return required_; }
  std::uint64_t available_bits() const noexcept { return available_; }

 private:
  std::uint64_t required_;
  std::uint64_t available_;
};

}  // namespace kltsteg
