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

// Segment-wise Karhunen-Loeve transform codec.
//
// A segment is a 3s x n byte matrix whose n columns are the sample vectors.
// Encoding computes the sample mean and the 1/n covariance, diagonalizes the
// covariance with cyclic Jacobi rotations, keeps the k leading eigenvectors
// and stores
//
//   mean      as 8.8 fixed point          (3s x u16)
//   basis     as round(v * 32767)         (3s x k  x i16, column-major)
//   projection as round((p - min) / (max - min) * 255)  (k x n x u8)
//
// with the projection range [min, max] kept as IEEE single precision.
// Decoding inverts each step and evaluates basis * projection + mean.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "kltsteg/matrix.hpp"
#include "kltsteg/raster.hpp"

namespace kltsteg {

inline constexpr double kBasisScale = 32767.0;
inline constexpr double kProjectionLevels = 255.0;
inline constexpr double kMeanScale = 256.0;

struct SegmentStats {
  std::vector<double> mean;  // length 3s
  Matrix covariance;         // 3s x 3s, exactly symmetric
};

struct EigenSystem {
  std::vector<double> eigenvalues;  // descending
  Matrix basis;                     // eigenvectors as columns
  int sweeps = 0;
};

struct ExplicitRank {
  std::size_t k = 1;
};
struct EnergyFraction {
  double tau = 0.95;
};
using RankPolicy = std::variant<ExplicitRank, EnergyFraction>;

struct QuantizedProjection {
  std::vector<std::uint8_t> values;  // k x n, row-major
  float min_p = 0.0f;
  float max_p = 0.0f;
};

struct SegmentCode {
  std::size_t rows = 0;  // 3s
  std::size_t cols = 0;  // n
  std::size_t k = 0;
  std::vector<std::uint16_t> mean_q;   // rows
  float min_p = 0.0f;
  float max_p = 0.0f;
  std::vector<std::int16_t> basis_q;   // rows x k, column-major
  std::vector<std::uint8_t> proj_q;    // k x cols, row-major

  bool operator==(const SegmentCode&) const = default;
};

struct DequantizedCode {
  Matrix projection;         // k x n
  Matrix basis;              // 3s x k
  std::vector<double> mean;  // 3s
};

// Column j of the segment is sample f_j; divisor is n.
SegmentStats segment_stats(const PlaneMatrix& segment);

// Cyclic-by-row Jacobi. Converges when the off-diagonal Frobenius norm drops
// to 1e-10 of the input's Frobenius norm; throws kNonConvergence after 100
// sweeps and kInvalidArgument for non-symmetric input. Eigenvalues are sorted
// descending (stable on ties); each eigenvector is signed so that its entry of
// largest magnitude (lowest index on exact ties) is nonnegative.
EigenSystem jacobi_eigen(const Matrix& symmetric);

inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr double kJacobiTolerance = 1e-10;

// Negative eigenvalues are treated as zero. Throws kInvalidArgument for k == 0
// or tau outside (0, 1].
std::size_t select_rank(std::span<const double> eigenvalues,
                        const RankPolicy& policy);

// First k columns of the eigenbasis.
Matrix leading_basis(const EigenSystem& eigen, std::size_t k);

// P = V_k^T (A - mean 1^T), k x n.
Matrix project(const PlaneMatrix& segment, const EigenSystem& eigen,
               std::span<const double> mean, std::size_t k);

QuantizedProjection quantize_projection(const Matrix& projection);

// Requires |v| <= 1 + 1e-9 (kInvalidArgument otherwise). Output is
// column-major.
std::vector<std::int16_t> quantize_basis(const Matrix& basis);

std::vector<std::uint16_t> quantize_mean(std::span<const double> mean);

DequantizedCode dequantize(const SegmentCode& code);

PlaneMatrix reconstruct_segment(const SegmentCode& code);

SegmentCode encode_segment(const PlaneMatrix& segment, const RankPolicy& policy);

struct CompressionRates {
  double component_rate = 0.0;  // 4k/3s averaged over segments
  double byte_rate = 0.0;   // payload bytes / (3 m n)
};

CompressionRates compression_rate(std::size_t k_total, std::size_t segment_rows,
                                  std::size_t cols, std::size_t num_segments,
                                  std::size_t pixel_rows);

// Round half away from zero.
double round_half_away(double v);

}  // namespace kltsteg
