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

// Independent reference computations for the test suites. Everything here is
// written as direct scalar-loop transcriptions of the defining formulas and
// deliberately avoids the library's linear-algebra path (Eigen products,
// hadamard_update), so a bug there cannot cancel out in a comparison.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "jmvcc/model.hpp"

namespace oracle {

using jmvcc::Index;
using jmvcc::JmvccState;
using jmvcc::Matrix;
using jmvcc::Vector;

inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (Index l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
      out(i, j) = acc;
    }
  return out;
}

inline Matrix naive_transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

inline double naive_frobenius_sq(const Matrix& a, const Matrix& b) {
  double acc = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      const double d = a(i, j) - b(i, j);
      acc += d * d;
    }
  return acc;
}

inline double naive_collaboration(const Matrix& f, const Matrix& g,
                                  const Matrix& gp) {
  Matrix diff(g.rows(), g.cols());
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < g.cols(); ++j) diff(i, j) = g(i, j) - gp(i, j);
  const Matrix proj = naive_matmul(f, diff);
  double acc = 0.0;
  for (Index i = 0; i < proj.rows(); ++i)
    for (Index j = 0; j < proj.cols(); ++j) acc += proj(i, j) * proj(i, j);
  return acc;
}

// Partition rule transcription:
//   G ∘ [FᵀX + Σ a FᵀF G' + b G*] ⊘ [FᵀF G + Σ a FᵀF G + b G + eps]
inline Matrix update_partition(int v, const std::vector<Matrix>& views,
                               const JmvccState& s, double eps) {
  const Matrix ft = naive_transpose(s.F[v]);
  const Matrix ftx = naive_matmul(ft, views[v]);
  const Matrix ftf = naive_matmul(ft, s.F[v]);
  const Matrix ftfg = naive_matmul(ftf, s.G[v]);

  Matrix num = ftx;
  Matrix den = ftfg;
  for (int vp = 0; vp < static_cast<int>(views.size()); ++vp) {
    if (vp == v) continue;
    const double a = s.alpha(v, vp);
    const Matrix ftfgp = naive_matmul(ftf, s.G[vp]);
    for (Index i = 0; i < num.rows(); ++i)
      for (Index j = 0; j < num.cols(); ++j) {
        num(i, j) += a * ftfgp(i, j);
        den(i, j) += a * ftfg(i, j);
      }
  }
  Matrix out(num.rows(), num.cols());
  for (Index i = 0; i < num.rows(); ++i)
    for (Index j = 0; j < num.cols(); ++j) {
      const double n = num(i, j) + s.beta(v) * s.Gstar(i, j);
      const double d = den(i, j) + s.beta(v) * s.G[v](i, j);
      out(i, j) = s.G[v](i, j) * n / (d + eps);
    }
  return out;
}

// Centroid rule transcription, gradient-derived reading:
//   F ∘ [X Gᵀ + Σ a (F G' Gᵀ + F G G'ᵀ)] ⊘ [F G Gᵀ + Σ a (F G Gᵀ + F G' G'ᵀ) + eps]
// and the printed compatibility reading, which repeats F G' Gᵀ in the
// denominator in place of F G' G'ᵀ.
inline Matrix update_centroid(int v, const std::vector<Matrix>& views,
                              const JmvccState& s, double eps, bool literal) {
  const Matrix gt = naive_transpose(s.G[v]);
  const Matrix xgt = naive_matmul(views[v], gt);
  const Matrix fggt = naive_matmul(s.F[v], naive_matmul(s.G[v], gt));

  Matrix num = xgt;
  Matrix den = fggt;
  for (int vp = 0; vp < static_cast<int>(views.size()); ++vp) {
    if (vp == v) continue;
    const double a = s.alpha(v, vp);
    const Matrix gpt = naive_transpose(s.G[vp]);
    const Matrix f_gp_gt = naive_matmul(s.F[v], naive_matmul(s.G[vp], gt));
    const Matrix f_g_gpt = naive_matmul(s.F[v], naive_matmul(s.G[v], gpt));
    const Matrix f_gp_gpt = naive_matmul(s.F[v], naive_matmul(s.G[vp], gpt));
    for (Index i = 0; i < num.rows(); ++i)
      for (Index j = 0; j < num.cols(); ++j) {
        num(i, j) += a * (f_gp_gt(i, j) + f_g_gpt(i, j));
        den(i, j) += a * (fggt(i, j) +
                          (literal ? f_gp_gt(i, j) : f_gp_gpt(i, j)));
      }
  }
  Matrix out(num.rows(), num.cols());
  for (Index i = 0; i < num.rows(); ++i)
    for (Index j = 0; j < num.cols(); ++j)
      out(i, j) = s.F[v](i, j) * num(i, j) / (den(i, j) + eps);
  return out;
}

// Consensus rule transcription: G* ∘ [Σ b G] ⊘ [Σ b G* + eps].
inline Matrix update_consensus(const JmvccState& s, double eps) {
  Matrix out(s.Gstar.rows(), s.Gstar.cols());
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j) {
      double num = 0.0, den = 0.0;
      for (int v = 0; v < static_cast<int>(s.G.size()); ++v) {
        num += s.beta(v) * s.G[v](i, j);
        den += s.beta(v) * s.Gstar(i, j);
      }
      out(i, j) = s.Gstar(i, j) * num / (den + eps);
    }
  return out;
}

// Collaboration weights: a_{vv'} = H^(1/(g-1)) / Σ H^(1/(g-1)), per row.
inline Matrix collaboration_weights(const JmvccState& s, double gamma) {
  const int v_count = static_cast<int>(s.G.size());
  Matrix alpha = Matrix::Zero(v_count, v_count);
  for (int v = 0; v < v_count; ++v) {
    double norm = 0.0;
    for (int vp = 0; vp < v_count; ++vp) {
      if (vp == v) continue;
      const double h = naive_collaboration(s.F[v], s.G[v], s.G[vp]);
      alpha(v, vp) = std::pow(h, 1.0 / (gamma - 1.0));
      norm += alpha(v, vp);
    }
    for (int vp = 0; vp < v_count; ++vp)
      if (vp != v) alpha(v, vp) /= norm;
  }
  return alpha;
}

// Fusion weights: b_v = U^(1/(g-1)) / Σ U^(1/(g-1)).
inline Vector fusion_weights(const JmvccState& s, double gamma) {
  const int v_count = static_cast<int>(s.G.size());
  Vector beta(v_count);
  double norm = 0.0;
  for (int v = 0; v < v_count; ++v) {
    beta(v) = std::pow(naive_frobenius_sq(s.G[v], s.Gstar),
                       1.0 / (gamma - 1.0));
    norm += beta(v);
  }
  for (int v = 0; v < v_count; ++v) beta(v) /= norm;
  return beta;
}

// Joint objective assembled from the scalar-loop terms.
inline double objective(const std::vector<Matrix>& views,
                        const JmvccState& s) {
  double total = 0.0;
  for (int v = 0; v < static_cast<int>(views.size()); ++v) {
    total += naive_frobenius_sq(views[v], naive_matmul(s.F[v], s.G[v]));
    for (int vp = 0; vp < static_cast<int>(views.size()); ++vp)
      if (vp != v)
        total += s.alpha(v, vp) *
                 naive_collaboration(s.F[v], s.G[v], s.G[vp]);
    total += s.beta(v) * naive_frobenius_sq(s.G[v], s.Gstar);
  }
  return total;
}

// Purity by direct counting: per predicted cluster, the most common truth
// class wins.
inline double purity(const std::vector<int>& pred,
                     const std::vector<int>& truth) {
  std::map<int, std::map<int, int>> clusters;
  for (std::size_t i = 0; i < pred.size(); ++i) ++clusters[pred[i]][truth[i]];
  long matched = 0;
  for (const auto& [cluster, classes] : clusters) {
    int best = 0;
    for (const auto& [cls, count] : classes) best = std::max(best, count);
    matched += best;
  }
  return static_cast<double>(matched) / static_cast<double>(pred.size());
}

// NMI from a map-based contingency table, natural logs.
inline double nmi(const std::vector<int>& pred,
                  const std::vector<int>& truth) {
  const double n = static_cast<double>(pred.size());
  std::map<std::pair<int, int>, int> joint;
  std::map<int, int> pa, pb;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++joint[{pred[i], truth[i]}];
    ++pa[pred[i]];
    ++pb[truth[i]];
  }
  double ha = 0.0, hb = 0.0, mi = 0.0;
  for (const auto& [label, count] : pa) ha -= count / n * std::log(count / n);
  for (const auto& [label, count] : pb) hb -= count / n * std::log(count / n);
  for (const auto& [pair, count] : joint)
    mi += count / n *
          std::log(count * n /
                   (static_cast<double>(pa[pair.first]) * pb[pair.second]));
  if (ha + hb == 0.0) return 0.0;
  return 2.0 * mi / (ha + hb);
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng,
                            double lo = 0.05, double hi = 1.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = unif(rng);
  return m;
}

struct RandomInstance {
  std::vector<Matrix> views;
  JmvccState state;
};

// Arbitrary strictly-positive state + data, valid weight simplices; not a
// trajectory point of any fit, which makes it a stronger transcription probe.
inline RandomInstance random_instance(int v_count, int k, Index n,
                                      const std::vector<Index>& dims,
                                      std::mt19937_64& rng) {
  RandomInstance inst;
  for (int v = 0; v < v_count; ++v) {
    inst.views.push_back(random_matrix(dims[v], n, rng));
    inst.state.F.push_back(random_matrix(dims[v], k, rng));
    inst.state.G.push_back(random_matrix(k, n, rng));
  }
  inst.state.Gstar = random_matrix(k, n, rng);
  inst.state.alpha = Matrix::Zero(v_count, v_count);
  if (v_count > 1) {
    for (int v = 0; v < v_count; ++v) {
      double norm = 0.0;
      for (int vp = 0; vp < v_count; ++vp)
        if (vp != v) {
          inst.state.alpha(v, vp) =
              std::uniform_real_distribution<double>(0.1, 1.0)(rng);
          norm += inst.state.alpha(v, vp);
        }
      for (int vp = 0; vp < v_count; ++vp) inst.state.alpha(v, vp) /= norm;
    }
  }
  inst.state.beta = Vector(v_count);
  double norm = 0.0;
  for (int v = 0; v < v_count; ++v) {
    inst.state.beta(v) = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    norm += inst.state.beta(v);
  }
  inst.state.beta /= norm;
  return inst;
}

// Largest entrywise relative deviation, 0-vs-0 counting as equal.
inline double max_rel_error(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      const double denom = std::max(std::abs(a(i, j)), std::abs(b(i, j)));
      if (denom == 0.0) continue;
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / denom);
    }
  return worst;
}

inline double rel_error(double a, double b) {
  const double denom = std::max(std::abs(a), std::abs(b));
  return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

}  // namespace oracle
