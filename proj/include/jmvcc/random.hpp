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

#include <cstdint>
#include <random>

#include "jmvcc/matrix.hpp"

namespace jmvcc {

/// Derive an independent engine seed for a numbered stream (restart index,
/// view index, ...) from one user seed. splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Factor initialization: entries uniform in [0.1, 1.1) scaled by `scale`.
/// The 0.1 floor keeps entries away from the multiplicative-update lock at 0.
inline Matrix random_factor(Index rows, Index cols, double scale,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.1, 1.1);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = unif(rng) * scale;
  return m;
}

/// |N(0, sigma)| noise matrix; zero matrix when sigma == 0.
inline Matrix abs_gaussian(Index rows, Index cols, double sigma,
                           std::mt19937_64& rng) {
  if (sigma == 0.0) return Matrix::Zero(rows, cols);
  std::normal_distribution<double> gauss(0.0, sigma);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = std::abs(gauss(rng));
  return m;
}

}  // namespace jmvcc
