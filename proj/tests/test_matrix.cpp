/* Copyright 2026 The jmvcc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "jmvcc/matrix.hpp"
#include "support/oracles.hpp"

using jmvcc::Matrix;

TEST_CASE("frobenius_sq basics") {
  Matrix a(2, 2);
  a << 1, 2, 2, 0;
  CHECK(jmvcc::frobenius_sq(a, Matrix::Zero(2, 2)) == 9.0);
  CHECK(jmvcc::frobenius_sq(a, a) == 0.0);

  Matrix b(2, 3);
  CHECK_THROWS_AS(jmvcc::frobenius_sq(a, b), jmvcc::DimensionError);
}

TEST_CASE("frobenius_sq matches scalar-loop oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = oracle::random_matrix(3, 3, rng, 0.0, 1.0);
    const Matrix b = oracle::random_matrix(3, 3, rng, 0.0, 1.0);
    const double got = jmvcc::frobenius_sq(a, b);
    const double want = oracle::naive_frobenius_sq(a, b);
    CHECK(oracle::rel_error(got, want) < 1e-12);
    CHECK(jmvcc::frobenius_sq(b, a) == got);  // symmetry
  }
}

TEST_CASE("matmul basics") {
  Matrix b(2, 3);
  b << 1, 2, 3, 4, 5, 6;
  CHECK(jmvcc::matmul(Matrix::Identity(2, 2), b) == b);

  Matrix row(1, 2), col(2, 1);
  row << 1, 1;
  col << 2, 3;
  CHECK(jmvcc::matmul(row, col)(0, 0) == 5.0);

  CHECK_THROWS_AS(jmvcc::matmul(b, b), jmvcc::DimensionError);
}

TEST_CASE("matmul matches triple-loop oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = oracle::random_matrix(4, 3, rng);
    const Matrix b = oracle::random_matrix(3, 5, rng);
    CHECK(oracle::max_rel_error(jmvcc::matmul(a, b),
                                oracle::naive_matmul(a, b)) < 1e-12);
  }
}

TEST_CASE("hadamard_update fixed point, zero absorption, scalar case") {
  std::mt19937_64 rng(13);
  const Matrix theta = oracle::random_matrix(3, 4, rng);
  const Matrix ratio = oracle::random_matrix(3, 4, rng, 0.2, 2.0);

  // numer == denom with eps = 0 leaves theta untouched, exactly
  CHECK(jmvcc::hadamard_update(theta, ratio, ratio, 0.0) == theta);

  // zero theta stays zero for any numer/denom
  const Matrix zero = Matrix::Zero(3, 4);
  CHECK(jmvcc::hadamard_update(zero, theta, ratio, 1e-9) == zero);

  Matrix t(1, 1), n(1, 1), d(1, 1);
  t << 2;
  n << 3;
  d << 1;
  CHECK(jmvcc::hadamard_update(t, n, d, 0.0)(0, 0) == 6.0);

  CHECK_THROWS_AS(jmvcc::hadamard_update(theta, ratio, Matrix::Zero(2, 2), 0.0),
                  jmvcc::DimensionError);
}

TEST_CASE("entries of theta that are exactly zero remain zero") {
  std::mt19937_64 rng(14);
  Matrix theta = oracle::random_matrix(4, 4, rng);
  theta(1, 2) = 0.0;
  theta(3, 0) = 0.0;
  const Matrix out = jmvcc::hadamard_update(
      theta, oracle::random_matrix(4, 4, rng), oracle::random_matrix(4, 4, rng),
      1e-9);
  CHECK(out(1, 2) == 0.0);
  CHECK(out(3, 0) == 0.0);
}

TEST_CASE("non-negativity closure over random inputs") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = oracle::random_matrix(3, 4, rng, 0.0, 2.0);
    const Matrix b = oracle::random_matrix(4, 2, rng, 0.0, 2.0);
    const Matrix c = oracle::random_matrix(3, 4, rng, 0.0, 2.0);
    CHECK(jmvcc::is_nonnegative(jmvcc::matmul(a, b)));
    CHECK(jmvcc::frobenius_sq(a, c) >= 0.0);
    CHECK(jmvcc::is_nonnegative(jmvcc::hadamard_update(a, c, c, 1e-9)));
  }
}

TEST_CASE("is_nonnegative rejects negatives and NaN") {
  Matrix m = Matrix::Ones(2, 2);
  CHECK(jmvcc::is_nonnegative(m));
  m(0, 1) = -1e-18;
  CHECK_FALSE(jmvcc::is_nonnegative(m));
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(jmvcc::is_nonnegative(m));
  CHECK_THROWS_AS(jmvcc::require_nonnegative(m, "test"), jmvcc::DomainError);
}
