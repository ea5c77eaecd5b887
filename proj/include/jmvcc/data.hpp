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
#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jmvcc/matrix.hpp"
#include "jmvcc/random.hpp"

// Multi-view dataset ingestion and generation. On-disk layout of a dataset
// directory:
//
//   view_<name>.csv   one matrix per view (or view_<name>.mat1, binary)
//   labels.csv        optional ground truth, one integer per line
//
// CSV matrix format: first line "rows,cols", then one row per line of
// comma-separated decimal floats. Binary .mat1 format: magic "MVD1", two
// little-endian uint64 dims, then rows*cols little-endian float64, row-major.
//
// Columns are samples throughout (a view is M_v x N).

namespace jmvcc {

struct MultiViewDataset {
  std::vector<Matrix> views;              // each M_v x N
  std::vector<std::string> names;
  std::optional<std::vector<int>> labels;  // length N when present

  Index n_samples() const { return views.empty() ? 0 : views[0].cols(); }
  int n_views() const { return static_cast<int>(views.size()); }
};

struct LoadOptions {
  bool transpose = false;     // files store samples as rows; transpose on load
  bool shift_nonneg = false;  // shift each view by its min when negative
};

enum class MatrixFormat { Csv, Mat1 };
enum class CorruptMode { Shuffle, UniformNoise };

// ---------------------------------------------------------------------------
// Matrix file IO
// ---------------------------------------------------------------------------

namespace detail {

inline void put_u64_le(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline std::uint64_t get_u64_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline void put_f64_le(std::ostream& out, double d) {
  put_u64_le(out, std::bit_cast<std::uint64_t>(d));
}

inline double get_f64_le(std::istream& in) {
  return std::bit_cast<double>(get_u64_le(in));
}

constexpr char kMat1Magic[4] = {'M', 'V', 'D', '1'};

}  // namespace detail

inline void save_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << m.rows() << "," << m.cols() << "\n";
  char buf[32];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

inline Matrix load_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw IoError("empty matrix file: " + path.string());
  Index rows = 0, cols = 0;
  if (std::sscanf(line.c_str(), "%td,%td", &rows, &cols) != 2 || rows < 1 ||
      cols < 1)
    throw IoError("bad header in " + path.string());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line))
      throw IoError("truncated matrix file: " + path.string());
    std::stringstream ss(line);
    std::string cell;
    for (Index j = 0; j < cols; ++j) {
      if (!std::getline(ss, cell, ','))
        throw IoError("short row " + std::to_string(i) + " in " +
                      path.string());
      try {
        m(i, j) = std::stod(cell);
      } catch (const std::exception&) {
        throw IoError("bad numeric cell in " + path.string());
      }
    }
  }
  return m;
}

inline void save_matrix_mat1(const Matrix& m,
                             const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(detail::kMat1Magic, 4);
  detail::put_u64_le(out, static_cast<std::uint64_t>(m.rows()));
  detail::put_u64_le(out, static_cast<std::uint64_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) detail::put_f64_le(out, m(i, j));
  if (!out) throw IoError("write failed: " + path.string());
}

inline Matrix load_matrix_mat1(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, detail::kMat1Magic))
    throw IoError("bad magic in " + path.string());
  const auto rows = static_cast<Index>(detail::get_u64_le(in));
  const auto cols = static_cast<Index>(detail::get_u64_le(in));
  if (!in || rows < 1 || cols < 1)
    throw IoError("bad dimensions in " + path.string());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = detail::get_f64_le(in);
  if (!in) throw IoError("truncated matrix file: " + path.string());
  return m;
}

inline void save_labels_csv(const std::vector<int>& labels,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  for (int label : labels) out << label << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::vector<int> load_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path.string());
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      labels.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw IoError("bad label line in " + path.string());
    }
  }
  if (labels.empty()) throw IoError("no labels in " + path.string());
  return labels;
}

// ---------------------------------------------------------------------------
// Dataset directory
// ---------------------------------------------------------------------------

/// Load `view_*.csv` / `view_*.mat1` (sorted by filename) plus an optional
/// `labels.csv` from a directory. Views must agree on the sample count and
/// be non-negative unless shifting is requested.
inline MultiViewDataset load_dataset(const std::filesystem::path& dir,
                                     const LoadOptions& opts = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw IoError("not a dataset directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto stem = entry.path().stem().string();
    const auto ext = entry.path().extension().string();
    if (stem.rfind("view_", 0) == 0 && (ext == ".csv" || ext == ".mat1"))
      files.push_back(entry.path());
  }
  if (files.empty()) throw IoError("no view files in " + dir.string());
  std::sort(files.begin(), files.end());

  MultiViewDataset ds;
  for (const auto& file : files) {
    Matrix m = file.extension() == ".mat1" ? load_matrix_mat1(file)
                                           : load_matrix_csv(file);
    if (opts.transpose) m.transposeInPlace();
    if (!m.allFinite())
      throw DomainError("non-finite entry in " + file.string());
    if (opts.shift_nonneg) {
      const double lo = m.minCoeff();
      if (lo < 0.0) m.array() -= lo;
    }
    require_nonnegative(m, file.string());
    ds.views.push_back(std::move(m));
    ds.names.push_back(file.stem().string().substr(5));
  }

  const Index n = ds.views[0].cols();
  for (std::size_t v = 1; v < ds.views.size(); ++v)
    if (ds.views[v].cols() != n)
      throw DatasetError("view " + ds.names[v] + " has " +
                         std::to_string(ds.views[v].cols()) +
                         " samples, expected " + std::to_string(n));

  const auto labels_path = dir / "labels.csv";
  if (fs::exists(labels_path)) {
    auto labels = load_labels_csv(labels_path);
    if (static_cast<Index>(labels.size()) != n)
      throw DatasetError("labels length " + std::to_string(labels.size()) +
                         " != sample count " + std::to_string(n));
    ds.labels = std::move(labels);
  }
  return ds;
}

inline void save_dataset(const MultiViewDataset& ds,
                         const std::filesystem::path& dir,
                         MatrixFormat format = MatrixFormat::Csv) {
  std::filesystem::create_directories(dir);
  for (int v = 0; v < ds.n_views(); ++v) {
    const std::string name =
        ds.names.size() == ds.views.size() ? ds.names[v] : std::to_string(v);
    if (format == MatrixFormat::Mat1)
      save_matrix_mat1(ds.views[v], dir / ("view_" + name + ".mat1"));
    else
      save_matrix_csv(ds.views[v], dir / ("view_" + name + ".csv"));
  }
  if (ds.labels) save_labels_csv(*ds.labels, dir / "labels.csv");
}

// ---------------------------------------------------------------------------
// Synthetic data
// ---------------------------------------------------------------------------

/// Plant a balanced hard partition and emit one noisy view per entry of
/// `dims`: X_v = F0_v G0 + |N(0, sigma)|, where G0 has one-hot columns
/// (sample n in cluster n mod k) and each prototype matrix F0_v draws
/// entries from U[0.2, 1.0) with +1.5 on rows i with i mod k == cluster,
/// keeping prototypes well apart. Ground-truth labels ride along.
inline MultiViewDataset synth_multiview(Index n, int k,
                                        const std::vector<Index>& dims,
                                        double noise_sigma,
                                        std::uint64_t seed) {
  if (n < 1 || k < 1 || k > n)
    throw ParameterError("synth_multiview: need 1 <= k <= n");
  if (dims.empty()) throw ParameterError("synth_multiview: no view dims");
  for (Index m : dims)
    if (m < 1) throw ParameterError("synth_multiview: view dim < 1");
  if (noise_sigma < 0.0)
    throw ParameterError("synth_multiview: negative noise sigma");

  Matrix g0 = Matrix::Zero(k, n);
  std::vector<int> labels(n);
  for (Index i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(i % k);
    g0(labels[i], i) = 1.0;
  }

  MultiViewDataset ds;
  ds.labels = std::move(labels);
  std::uniform_real_distribution<double> unif(0.2, 1.0);
  for (std::size_t v = 0; v < dims.size(); ++v) {
    std::mt19937_64 rng(mix_seed(seed, v));
    Matrix f0(dims[v], k);
    for (Index i = 0; i < dims[v]; ++i)
      for (int c = 0; c < k; ++c)
        f0(i, c) = unif(rng) + (i % k == c ? 1.5 : 0.0);
    Matrix x = f0 * g0 + abs_gaussian(dims[v], n, noise_sigma, rng);
    ds.views.push_back(x.cwiseMax(0.0));
    ds.names.push_back(std::to_string(v));
  }
  return ds;
}

/// Replace one view with structure-free data: either its own columns
/// shuffled (sample alignment destroyed) or i.i.d. uniform noise spanning
/// the view's value range. Other views are untouched.
inline MultiViewDataset corrupt_view(const MultiViewDataset& ds, int view,
                                     CorruptMode mode, std::uint64_t seed) {
  if (view < 0 || view >= ds.n_views())
    throw ParameterError("corrupt_view: view index out of range");
  MultiViewDataset out = ds;
  Matrix& x = out.views[view];
  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(view)));
  if (mode == CorruptMode::Shuffle) {
    std::vector<Index> perm(x.cols());
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix shuffled(x.rows(), x.cols());
    for (Index j = 0; j < x.cols(); ++j) shuffled.col(j) = x.col(perm[j]);
    x = std::move(shuffled);
  } else {
    const double hi = std::max(x.maxCoeff(), 1e-12);
    std::uniform_real_distribution<double> unif(0.0, hi);
    for (Index i = 0; i < x.rows(); ++i)
      for (Index j = 0; j < x.cols(); ++j) x(i, j) = unif(rng);
  }
  return out;
}

}  // namespace jmvcc
