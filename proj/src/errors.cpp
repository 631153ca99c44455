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

#include "kltsteg/errors.hpp"

namespace kltsteg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kDecode: return "decode error";
    case ErrorKind::kCapacityExceeded: return "capacity exceeded";
    case ErrorKind::kCorruptPayload: return "corrupt payload";
    case ErrorKind::kMagicMismatch: return "magic mismatch";
    case ErrorKind::kUnsupportedVersion: return "unsupported version";
    case ErrorKind::kNonConvergence: return "non-convergence";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

CapacityError::CapacityError(std::uint64_t required_bits,
                             std::uint64_t available_bits,
                             const std::string& message)
    : Error(ErrorKind::kCapacityExceeded, message),
      required_(required_bits),
      available_(available_bits) {}

}  // namespace kltsteg
