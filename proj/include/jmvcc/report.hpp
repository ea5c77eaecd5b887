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

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jmvcc/matrix.hpp"
#include "jmvcc/model.hpp"

namespace jmvcc {

using OrderedJson = nlohmann::ordered_json;

/// Everything one run produces except the label file. Serialized with a
/// stable field order; `timing` is the only section excluded from
/// byte-level determinism guarantees.
struct RunReport {
  std::string algorithm;            // "jmvcc" or "nmf"
  JmvccConfig config;
  std::vector<std::string> view_names;
  Index n_samples = 0;
  std::vector<Index> view_dims;
  std::vector<RestartRun> runs;
  int best_restart = 0;
  Matrix alpha;                     // empty for single-view baselines
  Vector beta;
  bool converged = false;
  bool monotone_violation = false;
  std::optional<double> purity_score;
  std::optional<double> nmi_score;
  double load_ms = 0.0;
  double fit_ms = 0.0;
  double total_ms = 0.0;
};

inline OrderedJson to_json(const RunReport& r) {
  OrderedJson j;
  j["algorithm"] = r.algorithm;
  j["config"] = {{"k", r.config.k},
                 {"gamma", r.config.gamma},
                 {"max_iters", r.config.max_iters},
                 {"tol", r.config.tol},
                 {"restarts", r.config.restarts},
                 {"seed", r.config.seed},
                 {"eps", r.config.eps},
                 {"eq8_literal", r.config.eq8_literal},
                 {"invert_alpha_exponent", r.config.invert_alpha_exponent},
                 {"jobs", r.config.jobs}};
  j["dataset"] = {{"n_samples", r.n_samples},
                  {"views", r.view_names},
                  {"dims", r.view_dims}};

  OrderedJson runs = OrderedJson::array();
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const RestartRun& run = r.runs[i];
    runs.push_back({{"restart", i},
                    {"iterations", run.iterations},
                    {"final_objective", run.final_objective},
                    {"converged", run.converged},
                    {"monotone_violation", run.monotone_violation},
                    {"trace", run.trace}});
  }
  j["restarts"] = std::move(runs);
  j["best_restart"] = r.best_restart;

  OrderedJson alpha = OrderedJson::array();
  for (Index v = 0; v < r.alpha.rows(); ++v) {
    OrderedJson row = OrderedJson::array();
    for (Index vp = 0; vp < r.alpha.cols(); ++vp)
      row.push_back(r.alpha(v, vp));
    alpha.push_back(std::move(row));
  }
  j["alpha"] = std::move(alpha);
  OrderedJson beta = OrderedJson::array();
  for (Index v = 0; v < r.beta.size(); ++v) beta.push_back(r.beta(v));
  j["beta"] = std::move(beta);

  j["converged"] = r.converged;
  j["monotone_violation"] = r.monotone_violation;
  j["scores"] = OrderedJson::object();
  if (r.purity_score) j["scores"]["purity"] = *r.purity_score;
  if (r.nmi_score) j["scores"]["nmi"] = *r.nmi_score;
  j["timing"] = {{"load_ms", r.load_ms},
                 {"fit_ms", r.fit_ms},
                 {"total_ms", r.total_ms}};
  return j;
}

inline void write_report(const RunReport& r,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << to_json(r).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace jmvcc
