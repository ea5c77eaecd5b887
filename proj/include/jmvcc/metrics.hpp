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
#include <unordered_map>
#include <vector>

#include "jmvcc/matrix.hpp"

namespace jmvcc {

/// Hard assignment from a soft K x N partition matrix: per column, the row
/// index of the predominant component. Ties break to the lowest row index.
inline std::vector<int> discretize(const Matrix& gstar) {
  if (gstar.rows() < 1 || gstar.cols() < 1)
    throw DimensionError("discretize: empty matrix");
  std::vector<int> labels(gstar.cols());
  for (Index n = 0; n < gstar.cols(); ++n) {
    int best = 0;
    for (Index k = 1; k < gstar.rows(); ++k)
      if (gstar(k, n) > gstar(best, n)) best = static_cast<int>(k);
    labels[n] = best;
  }
  return labels;
}

namespace detail {

// Contingency counts between two labelings; label values may be arbitrary
// ints (remapped to dense indices).
struct Contingency {
  std::vector<std::vector<long>> counts;  // [cluster of a][cluster of b]
  std::vector<long> row_sums, col_sums;
  long total = 0;
};

inline Contingency contingency_table(const std::vector<int>& a,
                                     const std::vector<int>& b) {
  if (a.size() != b.size())
    throw DimensionError("contingency: label vectors differ in length");
  if (a.empty()) throw DimensionError("contingency: empty labeling");
  std::unordered_map<int, int> ida, idb;
  std::vector<std::pair<int, int>> remapped(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ra = ida.emplace(a[i], static_cast<int>(ida.size()));
    const auto rb = idb.emplace(b[i], static_cast<int>(idb.size()));
    remapped[i] = {ra.first->second, rb.first->second};
  }
  Contingency c;
  c.counts.assign(ida.size(), std::vector<long>(idb.size(), 0));
  c.row_sums.assign(ida.size(), 0);
  c.col_sums.assign(idb.size(), 0);
  for (const auto& [i, j] : remapped) {
    ++c.counts[i][j];
    ++c.row_sums[i];
    ++c.col_sums[j];
    ++c.total;
  }
  return c;
}

}  // namespace detail

/// Fraction of samples belonging to the majority true class of their
/// assigned cluster; 1 means every cluster is class-pure.
inline double purity(const std::vector<int>& pred,
                     const std::vector<int>& truth) {
  const auto c = detail::contingency_table(pred, truth);
  long matched = 0;
  for (const auto& row : c.counts)
    matched += *std::max_element(row.begin(), row.end());
  return static_cast<double>(matched) / static_cast<double>(c.total);
}

/// Normalized mutual information 2 I(P;T) / (H(P) + H(T)), in [0, 1].
/// Both partitions constant (zero entropies) scores 0 by convention.
inline double nmi(const std::vector<int>& pred,
                  const std::vector<int>& truth) {
  const auto c = detail::contingency_table(pred, truth);
  const double n = static_cast<double>(c.total);
  double h_pred = 0.0, h_truth = 0.0, mutual = 0.0;
  for (long r : c.row_sums)
    if (r > 0) h_pred -= (r / n) * std::log(r / n);
  for (long s : c.col_sums)
    if (s > 0) h_truth -= (s / n) * std::log(s / n);
  for (std::size_t i = 0; i < c.counts.size(); ++i)
    for (std::size_t j = 0; j < c.counts[i].size(); ++j) {
      const long cnt = c.counts[i][j];
      if (cnt > 0)
        mutual += (cnt / n) *
                  std::log(cnt * n / (static_cast<double>(c.row_sums[i]) *
                                      static_cast<double>(c.col_sums[j])));
    }
  const double denom = h_pred + h_truth;
  if (denom == 0.0) return 0.0;
  return std::clamp(2.0 * mutual / denom, 0.0, 1.0);
}

}  // namespace jmvcc
