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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <utility>
#include <vector>

#include "jmvcc/matrix.hpp"
#include "jmvcc/nmf.hpp"
#include "jmvcc/random.hpp"

// Joint multi-view collaborative clustering: per-view NMF factorizations
// coupled by a horizontal-collaboration penalty ||F^v (G^v - G^v')||_F^2
// between every pair of views and a fusion penalty ||G^v - G*||_F^2 toward
// a shared consensus partition G*. Collaboration weights alpha (one row per
// view over its partners) and fusion weights beta are re-optimized in closed
// form every iteration from a single concentration parameter gamma.

namespace jmvcc {

struct JmvccConfig {
  int k = 2;
  double gamma = 2.0;  // weight concentration; must be > 1
  int max_iters = 300;
  double tol = 1e-6;
  int restarts = 10;
  std::uint64_t seed = 0;
  double eps = 1e-9;
  bool eq8_literal = false;          // printed centroid rule instead of the
                                     // gradient-derived one (audit aid)
  bool invert_alpha_exponent = false;  // experiment: favor agreeing partners
  int jobs = 1;                      // parallel restarts
};

struct JmvccState {
  std::vector<Matrix> F;  // per view, M_v x K
  std::vector<Matrix> G;  // per view, K x N
  Matrix Gstar;           // K x N
  Matrix alpha;           // V x V, zero diagonal, rows sum to 1 over partners
  Vector beta;            // V, sums to 1
};

/// One restart's trajectory.
struct RestartRun {
  std::vector<double> trace;  // objective after each completed iteration
  double final_objective = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone_violation = false;
};

struct FitResult {
  JmvccState state;  // state of the best restart
  int best_restart = 0;
  std::vector<RestartRun> runs;
};

/// Per-iteration inspection hook: (restart, iteration, state after updates).
/// With jobs > 1 it may be invoked concurrently from several restarts.
using FitObserver =
    std::function<void(int restart, int iter, const JmvccState&)>;

// ---------------------------------------------------------------------------
// Objective terms
// ---------------------------------------------------------------------------

/// Collaboration cost ||F_v (G_v - G_vp)||_F^2 between two views' partitions,
/// projected through the first view's centroids.
inline double collaboration_term(const Matrix& f_v, const Matrix& g_v,
                                 const Matrix& g_vp) {
  require_same_shape(g_v, g_vp, "collaboration_term");
  if (f_v.cols() != g_v.rows())
    throw DimensionError("collaboration_term: F cols != G rows");
  return (f_v * (g_v - g_vp)).squaredNorm();
}

/// Fusion cost ||G_v - G*||_F^2 between a local partition and the consensus.
inline double utility_term(const Matrix& g_v, const Matrix& gstar) {
  return frobenius_sq(g_v, gstar);
}

/// All pairwise collaboration costs; row v holds H(v, v') for v' != v.
inline Matrix collaboration_matrix(const JmvccState& s) {
  const int v_count = static_cast<int>(s.G.size());
  Matrix h = Matrix::Zero(v_count, v_count);
  for (int v = 0; v < v_count; ++v)
    for (int vp = 0; vp < v_count; ++vp)
      if (vp != v) h(v, vp) = collaboration_term(s.F[v], s.G[v], s.G[vp]);
  return h;
}

/// Joint objective: per-view reconstruction + alpha-weighted collaboration
/// + beta-weighted fusion toward the consensus.
inline double objective(const std::vector<Matrix>& views,
                        const JmvccState& s) {
  const int v_count = static_cast<int>(views.size());
  if (static_cast<int>(s.F.size()) != v_count ||
      static_cast<int>(s.G.size()) != v_count)
    throw DimensionError("objective: state/view count mismatch");
  double total = 0.0;
  for (int v = 0; v < v_count; ++v) {
    total += frobenius_sq(views[v], s.F[v] * s.G[v]);
    for (int vp = 0; vp < v_count; ++vp)
      if (vp != v)
        total += s.alpha(v, vp) * collaboration_term(s.F[v], s.G[v], s.G[vp]);
    total += s.beta(v) * utility_term(s.G[v], s.Gstar);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Multiplicative updates
// ---------------------------------------------------------------------------

/// Partition update for view v:
///
///   G_v <- G_v ∘ [FᵀX + Σ_{v'} a_{vv'} FᵀF G_v' + b_v G*]
///              ⊘ [FᵀF G_v + Σ_{v'} a_{vv'} FᵀF G_v + b_v G_v + eps]
inline Matrix update_partition(int v, const std::vector<Matrix>& views,
                               const JmvccState& s, double eps) {
  const Matrix& f = s.F[v];
  const Matrix& g = s.G[v];
  const Matrix ftf = f.transpose() * f;
  const Matrix ftf_g = ftf * g;

  Matrix numer = f.transpose() * views[v];
  double alpha_sum = 0.0;
  for (int vp = 0; vp < static_cast<int>(views.size()); ++vp) {
    if (vp == v) continue;
    const double a = s.alpha(v, vp);
    numer += a * (ftf * s.G[vp]);
    alpha_sum += a;
  }
  numer += s.beta(v) * s.Gstar;

  Matrix denom = ftf_g + alpha_sum * ftf_g + s.beta(v) * g;
  return hadamard_update(g, numer, denom, eps);
}

/// Centroid update for view v. The collaboration contribution comes from the
/// gradient of ||F (G - G')||_F^2 split into its positive/negative parts:
///
///   F <- F ∘ [X Gᵀ + Σ_{v'} a_{vv'} (F G' Gᵀ + F G G'ᵀ)]
///          ⊘ [F G Gᵀ + Σ_{v'} a_{vv'} (F G Gᵀ + F G' G'ᵀ) + eps]
///
/// With `literal` set, the denominator carries the same cross term F G' Gᵀ
/// as the numerator in place of F G' G'ᵀ (compatibility mode for auditing
/// the alternative published form; identical fixed points at alpha = 0).
inline Matrix update_centroid(int v, const std::vector<Matrix>& views,
                              const JmvccState& s, double eps,
                              bool literal = false) {
  const Matrix& f = s.F[v];
  const Matrix& g = s.G[v];
  const Matrix ggt = g * g.transpose();
  const Matrix fggt = f * ggt;

  Matrix numer = views[v] * g.transpose();
  Matrix denom = fggt;
  for (int vp = 0; vp < static_cast<int>(views.size()); ++vp) {
    if (vp == v) continue;
    const double a = s.alpha(v, vp);
    const Matrix& gp = s.G[vp];
    const Matrix cross = f * (gp * g.transpose());
    numer += a * (cross + f * (g * gp.transpose()));
    if (literal)
      denom += a * (fggt + cross);
    else
      denom += a * (fggt + f * (gp * gp.transpose()));
  }
  return hadamard_update(f, numer, denom, eps);
}

/// Consensus update: G* <- G* ∘ [Σ_v b_v G_v] ⊘ [Σ_v b_v G* + eps].
inline Matrix update_consensus(const JmvccState& s, double eps) {
  Matrix numer = Matrix::Zero(s.Gstar.rows(), s.Gstar.cols());
  double beta_sum = 0.0;
  for (int v = 0; v < static_cast<int>(s.G.size()); ++v) {
    require_same_shape(s.G[v], s.Gstar, "update_consensus");
    numer += s.beta(v) * s.G[v];
    beta_sum += s.beta(v);
  }
  return hadamard_update(s.Gstar, numer, beta_sum * s.Gstar, eps);
}

// ---------------------------------------------------------------------------
// Weight updates
// ---------------------------------------------------------------------------

/// Closed-form collaboration weights, one simplex row per view:
///
///   a_{vv'} = H_{vv'}^(1/(gamma-1)) / Σ_{v'} H_{vv'}^(1/(gamma-1))
///
/// A row whose H values are all zero falls back to uniform weights (any
/// weighting is optimal under full agreement). `invert` negates the exponent
/// so agreeing partners are favored instead; zero-H partners then take the
/// dominance limit (uniform over the zero set).
inline Matrix collaboration_weights(const JmvccState& s, double gamma,
                                    bool invert = false) {
  if (gamma <= 1.0)
    throw ParameterError("collaboration_weights: gamma must be > 1");
  const int v_count = static_cast<int>(s.G.size());
  Matrix alpha = Matrix::Zero(v_count, v_count);
  if (v_count < 2) return alpha;

  const Matrix h = collaboration_matrix(s);
  const double expo = (invert ? -1.0 : 1.0) / (gamma - 1.0);
  for (int v = 0; v < v_count; ++v) {
    std::vector<int> zero_partners;
    for (int vp = 0; vp < v_count; ++vp)
      if (vp != v && h(v, vp) == 0.0) zero_partners.push_back(vp);

    if (static_cast<int>(zero_partners.size()) == v_count - 1 ||
        (invert && !zero_partners.empty())) {
      const double w = 1.0 / static_cast<double>(
                                 invert ? zero_partners.size() : v_count - 1);
      if (invert) {
        for (int vp : zero_partners) alpha(v, vp) = w;
      } else {
        for (int vp = 0; vp < v_count; ++vp)
          if (vp != v) alpha(v, vp) = w;
      }
      continue;
    }

    double norm = 0.0;
    for (int vp = 0; vp < v_count; ++vp) {
      if (vp == v) continue;
      alpha(v, vp) = std::pow(h(v, vp), expo);
      norm += alpha(v, vp);
    }
    for (int vp = 0; vp < v_count; ++vp)
      if (vp != v) alpha(v, vp) /= norm;
  }
  return alpha;
}

/// Closed-form fusion weights on the simplex:
///
///   b_v = U_v^(1/(gamma-1)) / Σ_v U_v^(1/(gamma-1)),  U_v = ||G_v - G*||_F^2
///
/// All-zero disagreement falls back to uniform 1/V.
inline Vector fusion_weights(const JmvccState& s, double gamma) {
  if (gamma <= 1.0) throw ParameterError("fusion_weights: gamma must be > 1");
  const int v_count = static_cast<int>(s.G.size());
  Vector beta(v_count);
  double norm = 0.0;
  const double expo = 1.0 / (gamma - 1.0);
  for (int v = 0; v < v_count; ++v) {
    beta(v) = std::pow(utility_term(s.G[v], s.Gstar), expo);
    norm += beta(v);
  }
  if (norm == 0.0) return Vector::Constant(v_count, 1.0 / v_count);
  return beta / norm;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

namespace detail {

inline void validate(const std::vector<Matrix>& views,
                     const JmvccConfig& cfg) {
  if (views.empty()) throw DatasetError("jmvcc_fit: no views");
  const Index n = views[0].cols();
  for (std::size_t v = 0; v < views.size(); ++v) {
    if (views[v].cols() != n)
      throw DatasetError("jmvcc_fit: view " + std::to_string(v) +
                         " has " + std::to_string(views[v].cols()) +
                         " samples, expected " + std::to_string(n));
    require_nonnegative(views[v], "jmvcc_fit: view " + std::to_string(v));
    if (cfg.k > std::min(views[v].rows(), n))
      throw ParameterError("jmvcc_fit: k exceeds min(rows, cols) of view " +
                           std::to_string(v));
  }
  if (cfg.k < 1) throw ParameterError("jmvcc_fit: k must be >= 1");
  if (cfg.gamma <= 1.0) throw ParameterError("jmvcc_fit: gamma must be > 1");
  if (cfg.max_iters < 0) throw ParameterError("jmvcc_fit: max_iters < 0");
  if (cfg.restarts < 1) throw ParameterError("jmvcc_fit: restarts must be >= 1");
  if (cfg.eps <= 0.0) throw ParameterError("jmvcc_fit: eps must be > 0");
  if (cfg.jobs < 1) throw ParameterError("jmvcc_fit: jobs must be >= 1");
}

inline JmvccState init_state(const std::vector<Matrix>& views,
                             const JmvccConfig& cfg, std::mt19937_64& rng) {
  const int v_count = static_cast<int>(views.size());
  const Index n = views[0].cols();
  JmvccState s;
  s.F.reserve(v_count);
  s.G.reserve(v_count);
  double scale_sum = 0.0;
  for (const Matrix& x : views) {
    const double scale = init_scale(x, cfg.k);
    scale_sum += scale;
    s.F.push_back(random_factor(x.rows(), cfg.k, scale, rng));
    s.G.push_back(random_factor(cfg.k, n, scale, rng));
  }
  s.Gstar = random_factor(cfg.k, n, scale_sum / v_count, rng);
  s.alpha = Matrix::Zero(v_count, v_count);
  if (v_count > 1) {
    s.alpha.setConstant(1.0 / (v_count - 1));
    s.alpha.diagonal().setZero();
  }
  s.beta = Vector::Constant(v_count, 1.0 / v_count);
  return s;
}

// Relative slack accepted before an iteration counts as an objective
// increase; the coupled updates are monotone empirically, not provably.
inline constexpr double kMonotoneSlack = 1e-6;

inline std::pair<JmvccState, RestartRun> run_restart(
    const std::vector<Matrix>& views, const JmvccConfig& cfg, int restart,
    const FitObserver& observer) {
  const int v_count = static_cast<int>(views.size());
  std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
  JmvccState s = init_state(views, cfg, rng);
  RestartRun run;

  double prev = objective(views, s);
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (v_count > 1)
      s.alpha = collaboration_weights(s, cfg.gamma, cfg.invert_alpha_exponent);
    s.beta = fusion_weights(s, cfg.gamma);

    // Jacobi sweeps: every view reads the pre-sweep snapshot, so the V
    // per-view updates commute and the result is schedule-independent.
    std::vector<Matrix> new_g(v_count);
    for (int v = 0; v < v_count; ++v)
      new_g[v] = update_partition(v, views, s, cfg.eps);
    s.G = std::move(new_g);

    std::vector<Matrix> new_f(v_count);
    for (int v = 0; v < v_count; ++v)
      new_f[v] = update_centroid(v, views, s, cfg.eps, cfg.eq8_literal);
    s.F = std::move(new_f);

    s.Gstar = update_consensus(s, cfg.eps);

    const double obj = objective(views, s);
    run.trace.push_back(obj);
    run.iterations = it + 1;
    if (obj > prev * (1.0 + kMonotoneSlack)) run.monotone_violation = true;
    if (observer) observer(restart, it, s);
    if (std::abs(obj - prev) / std::max(prev, cfg.eps) < cfg.tol) {
      run.converged = true;
      break;
    }
    prev = obj;
  }
  run.final_objective = run.trace.empty() ? prev : run.trace.back();
  return {std::move(s), std::move(run)};
}

}  // namespace detail

/// Run the full algorithm: `restarts` independent random initializations,
/// each iterating weight updates, partition/centroid sweeps and the consensus
/// update until the relative objective change drops below tol. Returns the
/// restart with the lowest final objective (ties: lowest index); every
/// restart's trajectory is kept. Deterministic for a fixed seed regardless
/// of `jobs`.
inline FitResult jmvcc_fit(const std::vector<Matrix>& views,
                           const JmvccConfig& cfg,
                           const FitObserver& observer = {}) {
  detail::validate(views, cfg);

  std::vector<std::pair<JmvccState, RestartRun>> results(cfg.restarts);
  if (cfg.jobs <= 1 || cfg.restarts == 1) {
    for (int r = 0; r < cfg.restarts; ++r)
      results[r] = detail::run_restart(views, cfg, r, observer);
  } else {
    const int workers = std::min(cfg.jobs, cfg.restarts);
    std::atomic<int> next{0};
    std::vector<std::future<void>> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.push_back(std::async(std::launch::async, [&] {
        for (int r = next.fetch_add(1); r < cfg.restarts;
             r = next.fetch_add(1))
          results[r] = detail::run_restart(views, cfg, r, observer);
      }));
    }
    for (auto& f : pool) f.get();
  }

  FitResult fit;
  fit.runs.reserve(cfg.restarts);
  int best = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    if (results[r].second.final_objective <
        results[best].second.final_objective)
      best = r;
    fit.runs.push_back(std::move(results[r].second));
  }
  fit.best_restart = best;
  fit.state = std::move(results[best].first);
  return fit;
}

}  // namespace jmvcc
