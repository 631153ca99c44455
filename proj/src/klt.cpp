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

#include "kltsteg/klt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kltsteg/dsp/kernels.hpp"
#include "kltsteg/errors.hpp"
#include "kltsteg/payload.hpp"

namespace kltsteg {

double round_half_away(double v) { return std::round(v); }

SegmentStats segment_stats(const PlaneMatrix& segment) {
  const std::size_t rows = segment.rows();
  const std::size_t n = segment.cols();
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "segment has no columns");
  const auto& k = dsp::active_kernels();

  // Integer moments are exact, so the result is independent of the kernel
  // variant and symmetric by construction.
  std::vector<std::int64_t> sums(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    sums[r] = static_cast<std::int64_t>(k.sum_u8(segment.row(r).data(), n));
  }
  const auto count = static_cast<std::int64_t>(n);
  const double n_d = static_cast<double>(n);
  const double n2 = n_d * n_d;

  SegmentStats stats{std::vector<double>(rows), Matrix(rows, rows)};
  for (std::size_t r = 0; r < rows; ++r) {
    stats.mean[r] = static_cast<double>(sums[r]) / n_d;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = r; c < rows; ++c) {
      const auto cross = static_cast<std::int64_t>(
          k.dot_u8(segment.row(r).data(), segment.row(c).data(), n));
      const std::int64_t numerator = count * cross - sums[r] * sums[c];
      const double value = static_cast<double>(numerator) / n2;
      stats.covariance(r, c) = value;
      stats.covariance(c, r) = value;
    }
  }
  return stats;
}

namespace {

double OffDiagonalNorm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) sum += a(r, c) * a(r, c);
    }
  }
  return std::sqrt(sum);
}

double FrobeniusNorm(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

// Zeroes a(p,q) with the rotation J = [[c, s], [-s, c]] applied on both sides.
void Rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double new_kp = c * akp - s * akq;
    const double new_kq = s * akp + c * akq;
    a(k, p) = new_kp;
    a(p, k) = new_kp;
    a(k, q) = new_kq;
    a(q, k) = new_kq;
  }
  a(p, p) = a(p, p) - t * apq;
  a(q, q) = a(q, q) + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

EigenSystem jacobi_eigen(const Matrix& symmetric) {
  const std::size_t n = symmetric.rows();
  if (symmetric.cols() != n || n == 0) {
    throw Error(ErrorKind::kDimensionMismatch, "eigensolver needs a square matrix");
  }
  const double norm = FrobeniusNorm(symmetric);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      if (std::abs(symmetric(r, c) - symmetric(c, r)) > 1e-12 * std::max(norm, 1.0)) {
        throw Error(ErrorKind::kInvalidArgument, "eigensolver input is not symmetric");
      }
    }
  }
  if (!std::isfinite(norm)) {
    throw Error(ErrorKind::kInvalidArgument, "eigensolver input is not finite");
  }

  Matrix a = symmetric;
  Matrix v = Matrix::identity(n);
  const double target = kJacobiTolerance * norm;
  int sweeps = 0;
  while (OffDiagonalNorm(a) > target) {
    if (sweeps == kMaxJacobiSweeps) {
      throw Error(ErrorKind::kNonConvergence,
                  "Jacobi did not converge in " + std::to_string(kMaxJacobiSweeps) +
                      " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) > 0.0) Rotate(a, v, p, q);
      }
    }
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenSystem out{std::vector<double>(n), Matrix(n, n), sweeps};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a(src, src);
    std::size_t pivot = 0;
    for (std::size_t r = 1; r < n; ++r) {
      if (std::abs(v(r, src)) > std::abs(v(pivot, src))) pivot = r;
    }
    const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) out.basis(r, j) = sign * v(r, src);
  }
  return out;
}

std::size_t select_rank(std::span<const double> eigenvalues,
                        const RankPolicy& policy) {
  if (eigenvalues.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no eigenvalues to select from");
  }
  if (const auto* fixed = std::get_if<ExplicitRank>(&policy)) {
    if (fixed->k == 0) throw Error(ErrorKind::kInvalidArgument, "rank must be >= 1");
    return std::min(fixed->k, eigenvalues.size());
  }
  const double tau = std::get<EnergyFraction>(policy).tau;
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "energy fraction must lie in (0, 1]");
  }
  double total = 0.0;
  for (double lambda : eigenvalues) total += std::max(lambda, 0.0);
  if (total == 0.0) return 1;
  // Same summation order as `total`, so tau = 1 reaches it exactly.
  double running = 0.0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    running += std::max(eigenvalues[i], 0.0);
    if (running >= tau * total) return i + 1;
  }
  return eigenvalues.size();
}

Matrix leading_basis(const EigenSystem& eigen, std::size_t k) {
  const std::size_t rows = eigen.basis.rows();
  if (k == 0 || k > eigen.basis.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "rank out of range");
  }
  Matrix out(rows, k);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < k; ++c) out(r, c) = eigen.basis(r, c);
  }
  return out;
}

Matrix project(const PlaneMatrix& segment, const EigenSystem& eigen,
               std::span<const double> mean, std::size_t k) {
  const std::size_t rows = segment.rows();
  const std::size_t n = segment.cols();
  if (eigen.basis.rows() != rows || mean.size() != rows || k == 0 ||
      k > eigen.basis.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "projection shapes disagree");
  }
  const auto& kernels = dsp::active_kernels();
  Matrix p(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    double* acc = p.row(i).data();
    for (std::size_t r = 0; r < rows; ++r) {
      kernels.accumulate_centered(segment.row(r).data(), mean[r],
                                  eigen.basis(r, i), acc, n);
    }
  }
  return p;
}

namespace {

float FloatAtMost(double v) {
  float f = static_cast<float>(v);
  if (static_cast<double>(f) > v) {
    f = std::nextafter(f, -std::numeric_limits<float>::infinity());
  }
  return f;
}

float FloatAtLeast(double v) {
  float f = static_cast<float>(v);
  if (static_cast<double>(f) < v) {
    f = std::nextafter(f, std::numeric_limits<float>::infinity());
  }
  return f;
}

}  // namespace

QuantizedProjection quantize_projection(const Matrix& projection) {
  const auto values = projection.data();
  if (values.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "projection is empty");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  QuantizedProjection out;
  out.values.assign(values.size(), 0);
  if (*lo_it == *hi_it) {
    out.min_p = out.max_p = static_cast<float>(*lo_it);
    return out;
  }
  // The stored single-precision range must enclose every value so that the
  // decoder sees the same affine map the encoder used.
  out.min_p = FloatAtMost(*lo_it);
  out.max_p = FloatAtLeast(*hi_it);
  const double lo = out.min_p;
  const double span = static_cast<double>(out.max_p) - lo;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double q = round_half_away((values[i] - lo) / span * kProjectionLevels);
    out.values[i] = static_cast<std::uint8_t>(std::clamp(q, 0.0, kProjectionLevels));
  }
  return out;
}

std::vector<std::int16_t> quantize_basis(const Matrix& basis) {
  std::vector<std::int16_t> out(basis.rows() * basis.cols());
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    for (std::size_t r = 0; r < basis.rows(); ++r) {
      const double v = basis(r, c);
      if (!(std::abs(v) <= 1.0 + 1e-9)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "basis entry " + std::to_string(v) +
                        " exceeds unit magnitude; basis is not orthonormal");
      }
      const double q = std::clamp(round_half_away(v * kBasisScale), -kBasisScale,
                                  kBasisScale);
      out[c * basis.rows() + r] = static_cast<std::int16_t>(q);
    }
  }
  return out;
}

std::vector<std::uint16_t> quantize_mean(std::span<const double> mean) {
  std::vector<std::uint16_t> out(mean.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double q = std::clamp(round_half_away(mean[i] * kMeanScale), 0.0, 65535.0);
    out[i] = static_cast<std::uint16_t>(q);
  }
  return out;
}

DequantizedCode dequantize(const SegmentCode& code) {
  DequantizedCode out{Matrix(code.k, code.cols), Matrix(code.rows, code.k),
                      std::vector<double>(code.rows)};
  const double lo = code.min_p;
  const double span = static_cast<double>(code.max_p) - lo;
  for (std::size_t i = 0; i < code.k * code.cols; ++i) {
    out.projection(i / code.cols, i % code.cols) =
        static_cast<double>(code.proj_q[i]) * span / kProjectionLevels + lo;
  }
  for (std::size_t c = 0; c < code.k; ++c) {
    for (std::size_t r = 0; r < code.rows; ++r) {
      out.basis(r, c) = static_cast<double>(code.basis_q[c * code.rows + r]) / kBasisScale;
    }
  }
  for (std::size_t r = 0; r < code.rows; ++r) {
    out.mean[r] = static_cast<double>(code.mean_q[r]) / kMeanScale;
  }
  return out;
}

PlaneMatrix reconstruct_segment(const SegmentCode& code) {
  const DequantizedCode approx = dequantize(code);
  const auto& kernels = dsp::active_kernels();
  const std::size_t n = code.cols;
  std::vector<double> acc(n);
  std::vector<std::uint8_t> values(code.rows * n);
  for (std::size_t r = 0; r < code.rows; ++r) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t i = 0; i < code.k; ++i) {
      kernels.accumulate_scaled(approx.projection.row(i).data(), approx.basis(r, i),
                                acc.data(), n);
    }
    kernels.round_clamp_u8(acc.data(), approx.mean[r], values.data() + r * n, n);
  }
  return PlaneMatrix(code.rows, n, std::move(values));
}

SegmentCode encode_segment(const PlaneMatrix& segment, const RankPolicy& policy) {
  const SegmentStats stats = segment_stats(segment);
  const EigenSystem eigen = jacobi_eigen(stats.covariance);
  const std::size_t k = select_rank(eigen.eigenvalues, policy);

  SegmentCode code;
  code.rows = segment.rows();
  code.cols = segment.cols();
  code.k = k;
  code.mean_q = quantize_mean(stats.mean);
  // Project around the mean the decoder will see, so mean quantization error
  // is absorbed by the retained components instead of added on top.
  std::vector<double> decoded_mean(code.rows);
  for (std::size_t r = 0; r < code.rows; ++r) {
    decoded_mean[r] = static_cast<double>(code.mean_q[r]) / kMeanScale;
  }
  const Matrix p = project(segment, eigen, decoded_mean, k);
  QuantizedProjection qp = quantize_projection(p);
  code.min_p = qp.min_p;
  code.max_p = qp.max_p;
  code.proj_q = std::move(qp.values);
  code.basis_q = quantize_basis(leading_basis(eigen, k));
  return code;
}

CompressionRates compression_rate(std::size_t k_total, std::size_t segment_rows,
                                  std::size_t cols, std::size_t num_segments,
                                  std::size_t pixel_rows) {
  if (k_total == 0 || segment_rows == 0 || cols == 0 || num_segments == 0 ||
      pixel_rows == 0) {
    throw Error(ErrorKind::kInvalidArgument, "compression rate needs positive arguments");
  }
  CompressionRates rates;
  rates.component_rate = 4.0 * static_cast<double>(k_total) /
                     (3.0 * static_cast<double>(segment_rows) *
                      static_cast<double>(num_segments));
  const std::uint64_t bits = payload_bit_length(segment_rows, cols, num_segments, k_total);
  rates.byte_rate = static_cast<double>(bits) / 8.0 /
                    (3.0 * static_cast<double>(pixel_rows) * static_cast<double>(cols));
  return rates;
}

}  // namespace kltsteg
