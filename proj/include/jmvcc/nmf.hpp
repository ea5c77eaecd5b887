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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "jmvcc/matrix.hpp"
#include "jmvcc/random.hpp"

namespace jmvcc {

struct NmfConfig {
  int k = 2;
  int max_iters = 200;
  double tol = 1e-6;        // relative objective change that stops iteration
  std::uint64_t seed = 0;
  double eps = 1e-9;        // denominator guard in multiplicative updates
};

/// Factorization X ~ F G with F (M x K) centroids and G (K x N) partitions.
struct NmfResult {
  Matrix F;
  Matrix G;
  std::vector<double> trace;  // objective after each completed iteration
  bool converged = false;
};

/// Initialization scale so that (F G) entries land near the data mean:
/// entries ~ U[0.1,1.1) * sqrt(mean(X)/K).
inline double init_scale(const Matrix& x, int k) {
  const double mean = x.size() > 0 ? x.mean() : 0.0;
  return std::sqrt(std::max(mean, 1e-12) / static_cast<double>(k));
}

/// Frobenius-loss NMF by alternating multiplicative updates:
///
///   G <- G ∘ (FᵀX) ⊘ (FᵀF G + eps)
///   F <- F ∘ (X Gᵀ) ⊘ (F G Gᵀ + eps)
///
/// The objective ||X - F G||_F^2 is non-increasing across iterations.
inline NmfResult nmf_fit(const Matrix& x, const NmfConfig& cfg) {
  const Index m = x.rows();
  const Index n = x.cols();
  if (cfg.k < 1 || cfg.k > std::min(m, n))
    throw ParameterError("nmf_fit: k must be in [1, min(rows, cols)]");
  if (cfg.max_iters < 0) throw ParameterError("nmf_fit: max_iters < 0");
  if (cfg.eps <= 0.0) throw ParameterError("nmf_fit: eps must be > 0");
  require_nonnegative(x, "nmf_fit: X");

  std::mt19937_64 rng(cfg.seed);
  const double scale = init_scale(x, cfg.k);
  NmfResult res;
  res.F = random_factor(m, cfg.k, scale, rng);
  res.G = random_factor(cfg.k, n, scale, rng);

  double prev = frobenius_sq(x, res.F * res.G);
  for (int it = 0; it < cfg.max_iters; ++it) {
    res.G = hadamard_update(res.G, res.F.transpose() * x,
                            res.F.transpose() * res.F * res.G, cfg.eps);
    res.F = hadamard_update(res.F, x * res.G.transpose(),
                            res.F * (res.G * res.G.transpose()), cfg.eps);
    const double obj = frobenius_sq(x, res.F * res.G);
    res.trace.push_back(obj);
    if (std::abs(obj - prev) / std::max(prev, cfg.eps) < cfg.tol) {
      res.converged = true;
      break;
    }
    prev = obj;
  }
  return res;
}

}  // namespace jmvcc
