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

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "kltsteg/errors.hpp"
#include "kltsteg/klt.hpp"

using namespace kltsteg;

namespace {

Matrix RandomSymmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = dist(rng);
  return a;
}

double Frobenius(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("identity is already diagonal") {
  const EigenSystem e = jacobi_eigen(Matrix::identity(5));
  CHECK(e.eigenvalues == std::vector<double>(5, 1.0));
  CHECK(e.basis == Matrix::identity(5));
  CHECK(e.sweeps <= 1);
}

TEST_CASE("2x2 example [[2,1],[1,2]]") {
  const EigenSystem e = jacobi_eigen(Matrix(2, 2, {2, 1, 1, 2}));
  CHECK(e.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(e.basis(0, 0) == doctest::Approx(h));
  CHECK(e.basis(1, 0) == doctest::Approx(h));
  // second column is +-(1,-1)/sqrt2; sign rule picks a nonnegative largest entry
  CHECK(std::abs(e.basis(0, 1)) == doctest::Approx(h));
  CHECK(e.basis(0, 1) == doctest::Approx(-e.basis(1, 1)));
}

TEST_CASE("rank-deficient 2x2 example [[1,2],[2,4]]") {
  const EigenSystem e = jacobi_eigen(Matrix(2, 2, {1, 2, 2, 4}));
  CHECK(e.eigenvalues[0] == doctest::Approx(5.0));
  CHECK(std::abs(e.eigenvalues[1]) <= 1e-12);
  CHECK(e.basis(0, 0) == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(e.basis(1, 0) == doctest::Approx(2.0 / std::sqrt(5.0)));
}

TEST_CASE("non-symmetric and non-square input is rejected") {
  CHECK_THROWS_AS(jacobi_eigen(Matrix(2, 2, {1, 2, 3, 4})), Error);
  CHECK_THROWS_AS(jacobi_eigen(Matrix(2, 3)), Error);
}

TEST_CASE("random symmetric matrices: orthogonality, diagonalization, energy, sign") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 15);
    const Matrix a = RandomSymmetric(rng, n);
    const EigenSystem e = jacobi_eigen(a);
    const double scale = Frobenius(a);
    CHECK(e.sweeps <= kMaxJacobiSweeps);

    const Matrix vtv = multiply(e.basis.transposed(), e.basis);
    CHECK(max_abs_diff(vtv, Matrix::identity(n)) <= 1e-9);

    const Matrix d = multiply(e.basis.transposed(), multiply(a, e.basis));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double expected = i == j ? e.eigenvalues[i] : 0.0;
        CHECK(std::abs(d(i, j) - expected) <= 1e-9 * scale);
      }

    double trace = 0.0, sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      trace += a(i, i);
      sum += e.eigenvalues[i];
      sq += e.eigenvalues[i] * e.eigenvalues[i];
    }
    CHECK(std::abs(trace - sum) <= 1e-9 * scale);
    CHECK(std::abs(std::sqrt(sq) - scale) <= 1e-9 * scale);

    for (std::size_t i = 1; i < n; ++i) CHECK(e.eigenvalues[i - 1] >= e.eigenvalues[i]);

    for (std::size_t c = 0; c < n; ++c) {
      std::size_t arg = 0;
      for (std::size_t r = 1; r < n; ++r)
        if (std::abs(e.basis(r, c)) > std::abs(e.basis(arg, c))) arg = r;
      CHECK(e.basis(arg, c) >= 0.0);
    }
  }
}

TEST_CASE("eigenvalues and eigenvectors agree with Eigen's self-adjoint solver") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 12;
    const Matrix a = RandomSymmetric(rng, n);
    Eigen::MatrixXd ea(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ea(i, j) = a(i, j);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ea);
    REQUIRE(solver.info() == Eigen::Success);
    const EigenSystem e = jacobi_eigen(a);
    const double scale = Frobenius(a);
    for (std::size_t i = 0; i < n; ++i) {
      // Eigen sorts ascending.
      const std::size_t j = n - 1 - i;
      CHECK(std::abs(e.eigenvalues[i] - solver.eigenvalues()(j)) <= 1e-9 * scale);
      // eigenvectors agree up to sign; random spectra are simple
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += e.basis(r, i) * solver.eigenvectors()(r, j);
      CHECK(std::abs(std::abs(dot) - 1.0) <= 1e-7);
    }
  }
}

TEST_CASE("covariance of a constant segment yields a zero spectrum") {
  const EigenSystem e = jacobi_eigen(Matrix(6, 6, 0.0));
  for (double l : e.eigenvalues) CHECK(l == 0.0);
  CHECK(e.basis == Matrix::identity(6));
}
