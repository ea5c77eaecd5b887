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

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace jmvcc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Shape disagreement between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Configuration value outside its accepted range.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Data violates the non-negativity/finiteness domain.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Views of one dataset disagree with each other.
struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File missing or unreadable/unwritable.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// True iff every entry is finite and >= 0 (NaN fails the comparison).
inline bool is_nonnegative(const Matrix& a) {
  return (a.array() >= 0.0).all() && a.allFinite();
}

inline void require_nonnegative(const Matrix& a, const std::string& what) {
  if (!is_nonnegative(a))
    throw DomainError(what + ": negative or non-finite entry");
}

inline void require_same_shape(const Matrix& a, const Matrix& b,
                               const std::string& what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(what + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
}

/// Squared Frobenius distance sum_ij (A_ij - B_ij)^2.
inline double frobenius_sq(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "frobenius_sq");
  return (a - b).squaredNorm();
}

/// Matrix product with an explicit inner-dimension check.
inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions disagree (" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  return a * b;
}

/// Multiplicative step theta ∘ (numer ⊘ (denom + eps)).
///
/// The ratio is formed before scaling by theta, so numer == denom with
/// eps = 0 is an exact fixed point and zero entries of theta stay zero
/// whenever denom + eps > 0.
inline Matrix hadamard_update(const Matrix& theta, const Matrix& numer,
                              const Matrix& denom, double eps) {
  require_same_shape(theta, numer, "hadamard_update");
  require_same_shape(theta, denom, "hadamard_update");
  return theta.array() * (numer.array() / (denom.array() + eps));
}

}  // namespace jmvcc
