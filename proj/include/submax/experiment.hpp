// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment machinery behind the CLI: dataset generation and ingestion,
// probability caching, dataset validation, and the (engine x scheme x beta
// x k) grid runner with lazy-greedy as the relative baseline.

#ifndef SUBMAX_EXPERIMENT_HPP_
#define SUBMAX_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "submax/analysis.hpp"
#include "submax/constraints.hpp"
#include "submax/core.hpp"
#include "submax/functions.hpp"
#include "submax/io.hpp"
#include "submax/optimize.hpp"
#include "submax/sampling.hpp"
#include "submax/svg.hpp"

namespace submax {

// ---------------------------------------------------------------------------
// Datasets

struct DatasetSpec {
  std::string builtin;  // coverage | facility | modular | supermodular
  std::string path;     // CSV path (with a manifest sidecar)
  std::string family;   // coverage | facility_location | smoothed
  int centers = 20;     // facility_location: Lloyd's center count
  int lloyd_iterations = 10;

  bool from_file() const { return !path.empty(); }
  void validate() const {
    if (builtin.empty() == path.empty()) {
      throw ConfigError("dataset: exactly one of builtin|path is required");
    }
    if (from_file() && family != "coverage" && family != "facility_location" &&
        family != "smoothed") {
      throw ConfigError(
          "dataset: family must be coverage|facility_location|smoothed");
    }
  }
};

struct LoadedDataset {
  DecomposableObjective objective;
  Json manifest;
  std::string name;
};

inline LoadedDataset builtin_dataset(const std::string& name) {
  const auto manifest = [&name](const std::string& family, int n, int count) {
    return Json{{"builtin", name},
                {"family", family},
                {"n", n},
                {"N", count},
                {"seed", 0}};
  };
  if (name == "coverage") {
    // two labels u1, u2 over styles {s1, s2}; edges u1-s1, u2-s1, u2-s2
    BipartiteDataset data;
    data.left_size = 2;
    data.right_size = 2;
    data.edges = {{0, 0}, {1, 0}, {1, 1}};
    return {coverage_objective(data), manifest("coverage", 2, 2), name};
  }
  if (name == "facility") {
    PointCloudDataset data;
    data.points = {{0.0, 0.0}};
    data.metric = Metric::kManhattan;
    return {facility_location_objective(data, {{0.0, 1.0}, {3.0, 0.0}}),
            manifest("facility_location", 2, 1), name};
  }
  if (name == "modular") {
    return {modular_objective({{5.0, 3.0, 1.0}}), manifest("modular", 3, 1),
            name};
  }
  if (name == "supermodular") {
    return {supermodular_fixture_objective(4), manifest("supermodular", 4, 1),
            name};
  }
  throw ConfigError("unknown builtin dataset: " + name);
}

inline LoadedDataset load_dataset(const DatasetSpec& spec,
                                  std::uint64_t seed) {
  spec.validate();
  if (!spec.builtin.empty()) return builtin_dataset(spec.builtin);

  Json manifest;
  try {
    manifest = read_manifest(spec.path);
  } catch (const IoError&) {
    manifest = Json::object();  // manifests are optional on ingestion
  }
  const std::string name =
      std::filesystem::path(spec.path).stem().string();

  if (spec.family == "coverage") {
    const auto data = read_bipartite_csv(spec.path);
    manifest["family"] = "bipartite";
    manifest["n"] = data.right_size;
    manifest["N"] = data.left_size;
    if (!manifest.contains("seed")) manifest["seed"] = 0;
    return {coverage_objective(data), manifest, name};
  }
  if (spec.family == "facility_location") {
    Metric metric = Metric::kSquaredEuclidean;
    if (manifest.value("metric", "") == "manhattan") {
      metric = Metric::kManhattan;
    }
    const auto data = read_point_cloud_csv(spec.path, metric);
    const auto centers = lloyd_centers(data, spec.centers,
                                       spec.lloyd_iterations, StreamRng(seed));
    manifest["family"] = "points";
    manifest["n"] = static_cast<int>(centers.size());
    manifest["N"] = static_cast<int>(data.points.size());
    if (!manifest.contains("seed")) manifest["seed"] = 0;
    return {facility_location_objective(data, centers), manifest, name};
  }
  // smoothed: one row of singleton values per component
  const auto rows = read_matrix_csv(spec.path);
  const int count = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.front().size());
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(count) * n);
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  auto family = std::make_shared<MaxSingletonFamily>(count, 1, std::move(flat), n);
  manifest["family"] = "smoothed";
  manifest["n"] = n;
  manifest["N"] = count;
  if (!manifest.contains("seed")) manifest["seed"] = 0;
  return {DecomposableObjective(GroundSet(n), std::move(family)), manifest,
          name};
}

// ---------------------------------------------------------------------------
// Generators (the gen subcommand)

struct GeneratedDataset {
  std::string csv_path;
  Json manifest;
  std::vector<std::string> warnings;
};

inline GeneratedDataset generate_smoothed_dataset(
    const SmoothedInstanceSpec& spec, const std::string& out_dir,
    const std::string& name) {
  const auto instance = generate_smoothed_instance(spec);
  std::vector<std::vector<double>> rows(
      static_cast<std::size_t>(spec.component_count),
      std::vector<double>(static_cast<std::size_t>(spec.n)));
  for (int i = 0; i < spec.component_count; ++i) {
    for (int e = 0; e < spec.n; ++e) {
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] =
          instance.family->singleton(i, e);
    }
  }
  const std::string csv_path =
      (std::filesystem::path(out_dir) / (name + ".csv")).string();
  write_matrix_csv(csv_path, rows);
  Json manifest{{"family", "smoothed"},
                {"model", spec.model},
                {"n", spec.n},
                {"N", spec.component_count},
                {"phi", spec.phi},
                {"d", spec.d},
                {"seed", spec.seed},
                {"off_mean", spec.off_mean},
                {"half_width", spec.half_width},
                {"star_element", instance.star_element},
                {"warnings", instance.warnings}};
  write_manifest(csv_path, manifest);
  return {csv_path, manifest, instance.warnings};
}

inline GeneratedDataset generate_points_dataset(
    int clusters, int per_cluster, int dim, double spread, Metric metric,
    std::uint64_t seed, const std::string& out_dir, const std::string& name) {
  if (clusters < 1 || per_cluster < 1 || dim < 1) {
    throw ConfigError("gen points: clusters, per-cluster and dim must be >= 1");
  }
  if (!(spread >= 0.0)) throw ConfigError("gen points: spread must be >= 0");
  StreamRng rng(seed);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(clusters) * per_cluster);
  for (int c = 0; c < clusters; ++c) {
    std::vector<double> center(static_cast<std::size_t>(dim));
    for (double& x : center) x = rng.next_uniform() * 10.0;
    for (int i = 0; i < per_cluster; ++i) {
      std::vector<double> point(center);
      for (double& x : point) x += spread * rng.next_gaussian();
      rows.push_back(std::move(point));
    }
  }
  const std::string csv_path =
      (std::filesystem::path(out_dir) / (name + ".csv")).string();
  write_matrix_csv(csv_path, rows);
  Json manifest{{"family", "points"},
                {"N", static_cast<int>(rows.size())},
                {"dim", dim},
                {"clusters", clusters},
                {"per_cluster", per_cluster},
                {"spread", spread},
                {"metric", metric == Metric::kManhattan ? "manhattan"
                                                        : "squared_euclidean"},
                {"seed", seed}};
  write_manifest(csv_path, manifest);
  return {csv_path, manifest, {}};
}

inline GeneratedDataset generate_bipartite_dataset(
    int left, int right, int edges_per_left, std::uint64_t seed,
    const std::string& out_dir, const std::string& name) {
  if (left < 1 || right < 1 || edges_per_left < 1) {
    throw ConfigError("gen bipartite: sizes must be >= 1");
  }
  StreamRng rng(seed);
  BipartiteDataset data;
  data.left_size = left;
  data.right_size = right;
  const int degree = std::min(edges_per_left, right);
  for (int u = 0; u < left; ++u) {
    StreamRng row = rng.derive(static_cast<std::uint64_t>(u));
    for (int v : row.sample_indices(right, degree)) {
      data.edges.emplace_back(u, v);
    }
  }
  const std::string csv_path =
      (std::filesystem::path(out_dir) / (name + ".csv")).string();
  write_bipartite_csv(csv_path, data);
  Json manifest{{"family", "bipartite"}, {"n", right},   {"N", left},
                {"edges_per_left", edges_per_left},      {"seed", seed}};
  write_manifest(csv_path, manifest);
  return {csv_path, manifest, {}};
}

// ---------------------------------------------------------------------------
// Probability caching (the probs subcommand)

struct ProbabilityCacheResult {
  std::string cache_path;
  bool cache_hit = false;
  std::uint64_t preprocessing_calls = 0;
  int component_count = 0;
};

inline ProbabilityCacheResult compute_probability_cache(
    const DatasetSpec& spec, const std::string& cache_path,
    std::uint64_t seed) {
  ProbabilityCacheResult result;
  result.cache_path = cache_path;
  if (std::filesystem::exists(cache_path)) {
    result.cache_hit = true;
    result.component_count =
        static_cast<int>(read_probability_cache(cache_path).size());
    return result;  // zero additional oracle calls
  }
  const auto loaded = load_dataset(spec, seed);
  CallCounter counter;
  const auto p = weighted_probabilities(loaded.objective, counter);
  write_probability_cache(cache_path, p);
  result.preprocessing_calls = counter.snapshot().preprocessing;
  result.component_count = static_cast<int>(p.size());
  Json manifest{{"dataset", loaded.name},
                {"n", loaded.objective.ground_size()},
                {"N", loaded.objective.component_count()},
                {"preprocessing_calls", result.preprocessing_calls},
                {"scheme", "weighted"}};
  write_manifest(cache_path, manifest);
  return result;
}

// ---------------------------------------------------------------------------
// Validation (the validate subcommand)

struct DatasetValidation {
  Json report;
  bool passed = false;
};

inline DatasetValidation validate_dataset(const DatasetSpec& spec, int trials,
                                          std::uint64_t seed) {
  const auto loaded = load_dataset(spec, seed);
  const auto& objective = loaded.objective;
  const auto checks = check_monotone_submodular(objective, trials,
                                                StreamRng(seed));
  CallCounter counter;

  Json report{{"dataset", loaded.name},
              {"n", objective.ground_size()},
              {"N", objective.component_count()},
              {"trials", checks.trials},
              {"monotonicity_violations", checks.monotonicity_violations},
              {"submodularity_violations", checks.submodularity_violations},
              {"worst_monotonicity_gap", checks.worst_monotonicity_gap},
              {"worst_submodularity_gap", checks.worst_submodularity_gap}};

  try {
    report["curvature_lower_bound"] =
        curvature(objective, CurvatureMode::kSingletonLowerBound, counter);
  } catch (const DegenerateObjectiveError&) {
    report["curvature_lower_bound"] = nullptr;
  }
  // Both phi statistics are reported: min over elements (the binding value
  // when the mean condition must hold for every e) and max (when it must
  // hold for some e). Singletons already inside [0,1] are used as-is; a
  // rescale happens only when some singleton exceeds 1.
  try {
    report["phi_model1"] = empirical_phi(objective, 1, counter);
    report["phi_model2"] = empirical_phi(objective, 2, counter);
    report["normalization_scale"] = 1.0;
  } catch (const InputError&) {
    try {
      const auto normalized = normalize_singletons(objective, counter);
      report["normalization_scale"] = normalized.scale;
      report["phi_model1"] = empirical_phi(normalized.objective, 1, counter);
      report["phi_model2"] = empirical_phi(normalized.objective, 2, counter);
    } catch (const InputError&) {
      report["normalization_scale"] = nullptr;
      report["phi_model1"] = nullptr;
      report["phi_model2"] = nullptr;
    }
  }

  DatasetValidation out;
  out.passed = checks.ok();
  report["passed"] = out.passed;
  out.report = std::move(report);
  return out;
}

// ---------------------------------------------------------------------------
// The experiment grid (the run subcommand)

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<std::string> engines{"lazy", "minibatch"};
  std::vector<std::string> schemes{"uniform", "weighted"};
  std::vector<double> betas{0.01};
  std::vector<int> ks{5};
  int repetitions = 20;
  double stochastic_eps = 0.1;
  std::string sparsifier_inner = "lazy";
  std::optional<double> minibatch_stochastic_eps;
  std::string probs_cache;  // optional: reuse a cached weighted-p CSV
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";
  bool svg = false;

  void validate() const {
    dataset.validate();
    if (engines.empty()) throw ConfigError("run: engines must be non-empty");
    for (const auto& engine : engines) {
      if (engine != "naive" && engine != "lazy" && engine != "stochastic" &&
          engine != "minibatch" && engine != "sparsifier") {
        throw ConfigError("run: unknown engine '" + engine + "'");
      }
    }
    for (const auto& scheme : schemes) {
      if (scheme != "uniform" && scheme != "weighted") {
        throw ConfigError("run: unknown scheme '" + scheme + "'");
      }
    }
    const bool sampled =
        std::find(engines.begin(), engines.end(), "minibatch") !=
            engines.end() ||
        std::find(engines.begin(), engines.end(), "sparsifier") !=
            engines.end();
    if (sampled && schemes.empty()) {
      throw ConfigError("run: sampled engines need at least one scheme");
    }
    if (betas.empty() || ks.empty()) {
      throw ConfigError("run: beta and k grids must be non-empty");
    }
    for (double beta : betas) {
      if (!(beta > 0.0 && beta <= 1.0)) {
        throw ConfigError("run: beta values must be in (0, 1]");
      }
    }
    for (int k : ks) {
      if (k < 1) throw ConfigError("run: k values must be positive");
    }
    if (repetitions < 1) throw ConfigError("run: repetitions must be >= 1");
    if (!(stochastic_eps > 0.0 && stochastic_eps < 1.0)) {
      throw ConfigError("run: stochastic_eps must be in (0, 1)");
    }
    if (sparsifier_inner != "naive" && sparsifier_inner != "lazy" &&
        sparsifier_inner != "stochastic") {
      throw ConfigError("run: sparsifier_inner must be naive|lazy|stochastic");
    }
    if (threads < 1) throw ConfigError("run: threads must be >= 1");
  }
};

inline ExperimentConfig parse_experiment_config(const Json& json) {
  ExperimentConfig config;
  try {
    if (json.contains("dataset")) {
      const auto& d = json.at("dataset");
      config.dataset.builtin = d.value("builtin", "");
      config.dataset.path = d.value("path", "");
      config.dataset.family = d.value("family", "");
      config.dataset.centers = d.value("centers", 20);
      config.dataset.lloyd_iterations = d.value("lloyd_iterations", 10);
    }
    if (json.contains("engines")) {
      config.engines = json.at("engines").get<std::vector<std::string>>();
    }
    if (json.contains("schemes")) {
      config.schemes = json.at("schemes").get<std::vector<std::string>>();
    }
    if (json.contains("beta")) {
      config.betas = json.at("beta").get<std::vector<double>>();
    }
    if (json.contains("k")) {
      config.ks = json.at("k").get<std::vector<int>>();
    }
    config.repetitions = json.value("repetitions", config.repetitions);
    config.stochastic_eps = json.value("stochastic_eps", config.stochastic_eps);
    config.sparsifier_inner =
        json.value("sparsifier_inner", config.sparsifier_inner);
    if (json.contains("minibatch_stochastic_eps") &&
        !json.at("minibatch_stochastic_eps").is_null()) {
      config.minibatch_stochastic_eps =
          json.at("minibatch_stochastic_eps").get<double>();
    }
    config.probs_cache = json.value("probs_cache", config.probs_cache);
    config.seed = json.value("seed", config.seed);
    config.threads = json.value("threads", config.threads);
    config.out_dir = json.value("out", config.out_dir);
    config.svg = json.value("svg", config.svg);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return config;
}

struct ReportRow {
  std::string engine;
  std::string scheme;    // uniform | weighted | none
  std::string schedule;  // per_iteration | once | none
  double beta = 1.0;
  int k = 0;
  int rep_count = 0;
  double utility_mean = 0.0;
  double utility_rel_mean = 0.0;
  double utility_rel_std = 0.0;
  double exec_calls_rel_mean = 0.0;
  double total_calls_rel_mean = 0.0;
  std::uint64_t preprocessing_calls = 0;  // attributed to this cell
  int early_exits = 0;
  int warnings = 0;
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::string report_path;
};

namespace detail {

struct GridCell {
  std::string engine;
  bool sampled = false;
  Scheme scheme = Scheme::kUniform;
  double beta = 1.0;
  int k = 1;
};

inline std::string csv_row(const ReportRow& r) {
  std::string out;
  out += r.engine;
  out += ',';
  out += r.scheme;
  out += ',';
  out += r.schedule;
  out += ',';
  out += format_double(r.beta);
  out += ',';
  out += std::to_string(r.k);
  out += ',';
  out += std::to_string(r.rep_count);
  out += ',';
  out += format_double(r.utility_mean);
  out += ',';
  out += format_double(r.utility_rel_mean);
  out += ',';
  out += format_double(r.utility_rel_std);
  out += ',';
  out += format_double(r.exec_calls_rel_mean);
  out += ',';
  out += format_double(r.total_calls_rel_mean);
  out += '\n';
  return out;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& config,
                                       std::ostream& log) {
  config.validate();
  const auto loaded = load_dataset(config.dataset, config.seed);
  const auto& objective = loaded.objective;
  const int n = objective.ground_size();
  const int count = objective.component_count();
  log << "dataset " << loaded.name << ": n = " << n << ", N = " << count
      << "\n";

  const bool any_sampled =
      std::find(config.engines.begin(), config.engines.end(), "minibatch") !=
          config.engines.end() ||
      std::find(config.engines.begin(), config.engines.end(), "sparsifier") !=
          config.engines.end();
  const bool wants_weighted =
      any_sampled && std::find(config.schemes.begin(), config.schemes.end(),
                               "weighted") != config.schemes.end();

  // The weighted singleton pass is paid once per dataset; its cost is
  // attributed to every weighted cell when totals are reported.
  std::vector<double> weighted_p;
  std::uint64_t weighted_preprocessing = 0;
  if (wants_weighted) {
    if (!config.probs_cache.empty() &&
        std::filesystem::exists(config.probs_cache)) {
      weighted_p = read_probability_cache(config.probs_cache);
      if (static_cast<int>(weighted_p.size()) != count) {
        throw ConfigError("run: probability cache length does not match N");
      }
      log << "weighted probabilities: cache hit (" << config.probs_cache
          << "), 0 calls\n";
    } else {
      CallCounter counter;
      weighted_p = weighted_probabilities(objective, counter);
      weighted_preprocessing = counter.snapshot().preprocessing;
      log << "weighted probabilities: " << weighted_preprocessing
          << " preprocessing calls\n";
      if (!config.probs_cache.empty()) {
        write_probability_cache(config.probs_cache, weighted_p);
      }
    }
  }
  std::vector<double> uniform_p;
  if (any_sampled) uniform_p = uniform_probabilities(count);

  // Lazy-greedy baselines per k.
  struct Baseline {
    double value = 0.0;
    std::uint64_t exec = 0;
  };
  std::map<int, Baseline> baselines;
  for (int k : config.ks) {
    CallCounter counter;
    const auto report =
        lazy_greedy(objective, CardinalityConstraint(k, n), counter);
    if (!(report.value > 0.0)) {
      throw ConfigError("run: lazy baseline value is zero; dataset degenerate");
    }
    baselines[k] = {report.value, counter.snapshot().execution};
  }

  // Grid enumeration: engine-major, then scheme x beta for sampled engines,
  // then k. The cell index keys the RNG stream.
  std::vector<detail::GridCell> cells;
  for (const auto& engine : config.engines) {
    const bool sampled = engine == "minibatch" || engine == "sparsifier";
    if (sampled) {
      for (const auto& scheme : config.schemes) {
        for (double beta : config.betas) {
          for (int k : config.ks) {
            cells.push_back({engine, true,
                             scheme == "weighted" ? Scheme::kWeighted
                                                  : Scheme::kUniform,
                             beta, k});
          }
        }
      }
    } else {
      for (int k : config.ks) {
        cells.push_back({engine, false, Scheme::kUniform, 1.0, k});
      }
    }
  }

  std::vector<ReportRow> rows(cells.size());
  const StreamRng grid_rng = StreamRng(config.seed).derive(0xce11);
  std::atomic<std::size_t> next{0};

  const auto run_cell = [&](std::size_t index) {
    const auto& cell = cells[index];
    const Baseline baseline = baselines.at(cell.k);
    const CardinalityConstraint constraint(cell.k, n);

    SamplingPlan plan;
    if (cell.sampled) {
      plan.scheme = cell.scheme;
      plan.p = cell.scheme == Scheme::kWeighted ? weighted_p : uniform_p;
      plan.alpha = alpha_from_beta(cell.beta, plan.p, count);
    }
    const std::uint64_t attributed_preprocessing =
        cell.sampled && cell.scheme == Scheme::kWeighted
            ? weighted_preprocessing
            : 0;

    ReportRow row;
    row.engine = cell.engine;
    row.scheme = cell.sampled ? scheme_name(cell.scheme) : "none";
    row.schedule = cell.engine == "minibatch"
                       ? "per_iteration"
                       : (cell.engine == "sparsifier" ? "once" : "none");
    row.beta = cell.beta;
    row.k = cell.k;
    row.rep_count = config.repetitions;
    row.preprocessing_calls = attributed_preprocessing;

    std::vector<double> utilities, rels, exec_rels, total_rels;
    for (int rep = 0; rep < config.repetitions; ++rep) {
      StreamRng rng = grid_rng.derive(index).derive(
          static_cast<std::uint64_t>(rep));
      CallCounter counter;
      RunReport report;
      if (cell.engine == "naive") {
        report = greedy(objective, constraint, counter);
      } else if (cell.engine == "lazy") {
        report = lazy_greedy(objective, constraint, counter);
      } else if (cell.engine == "stochastic") {
        report = stochastic_greedy(objective, constraint,
                                   config.stochastic_eps, rng, counter);
      } else if (cell.engine == "minibatch") {
        report = minibatch_greedy(objective, constraint, plan, rng, counter,
                                  std::nullopt,
                                  config.minibatch_stochastic_eps);
      } else {
        const InnerEngine inner =
            config.sparsifier_inner == "naive"
                ? InnerEngine::kNaive
                : (config.sparsifier_inner == "lazy" ? InnerEngine::kLazy
                                                     : InnerEngine::kStochastic);
        report = sparsifier_greedy(objective, constraint, plan, inner, rng,
                                   counter, std::nullopt,
                                   config.stochastic_eps);
      }
      const double exec =
          static_cast<double>(counter.snapshot().execution);
      utilities.push_back(report.value);
      rels.push_back(report.value / baseline.value);
      exec_rels.push_back(exec / static_cast<double>(baseline.exec));
      total_rels.push_back(
          (exec + static_cast<double>(attributed_preprocessing)) /
          static_cast<double>(baseline.exec));
      row.early_exits += report.exhausted_candidates ? 1 : 0;
      row.warnings += static_cast<int>(report.warnings.size());
    }

    const auto mean_of = [](const std::vector<double>& xs) {
      double m = 0.0;
      for (double x : xs) m += x;
      return m / static_cast<double>(xs.size());
    };
    row.utility_mean = mean_of(utilities);
    row.utility_rel_mean = mean_of(rels);
    if (rels.size() > 1) {
      double ss = 0.0;
      for (double r : rels) {
        ss += (r - row.utility_rel_mean) * (r - row.utility_rel_mean);
      }
      row.utility_rel_std = std::sqrt(ss / static_cast<double>(rels.size() - 1));
    }
    row.exec_calls_rel_mean = mean_of(exec_rels);
    row.total_calls_rel_mean = mean_of(total_rels);
    rows[index] = row;
  };

  const int workers =
      std::max(1, std::min<int>(config.threads,
                                static_cast<int>(cells.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t index = next.fetch_add(1);
          if (index >= cells.size()) break;
          run_cell(index);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Single collector writes everything, in enumeration order.
  std::string report_csv =
      "engine,scheme,schedule,beta,k,rep_count,utility_mean,utility_rel_mean,"
      "utility_rel_std,exec_calls_rel_mean,total_calls_rel_mean\n";
  for (const auto& row : rows) report_csv += detail::csv_row(row);
  const std::string report_path =
      (std::filesystem::path(config.out_dir) / "report.csv").string();
  write_text(report_path, report_csv);

  const auto write_panel = [&](const std::string& file,
                               const std::string& column, bool with_std,
                               auto metric, auto metric_std) {
    std::string text = "engine,scheme,schedule,beta,k," + column;
    if (with_std) text += "," + column + "_std";
    text += '\n';
    for (const auto& row : rows) {
      text += row.engine + ',' + row.scheme + ',' + row.schedule + ',' +
              format_double(row.beta) + ',' + std::to_string(row.k) + ',' +
              format_double(metric(row));
      if (with_std) text += ',' + format_double(metric_std(row));
      text += '\n';
    }
    write_text((std::filesystem::path(config.out_dir) / file).string(), text);
  };
  const auto zero = [](const ReportRow&) { return 0.0; };
  write_panel("panel_utility.csv", "utility_rel_mean", true,
              [](const ReportRow& r) { return r.utility_rel_mean; },
              [](const ReportRow& r) { return r.utility_rel_std; });
  write_panel("panel_exec_calls.csv", "exec_calls_rel_mean", false,
              [](const ReportRow& r) { return r.exec_calls_rel_mean; }, zero);
  write_panel("panel_total_calls.csv", "total_calls_rel_mean", false,
              [](const ReportRow& r) { return r.total_calls_rel_mean; }, zero);

  if (config.svg) {
    const auto series_for = [&](auto metric) {
      std::map<std::string, SvgSeries> grouped;
      for (const auto& row : rows) {
        std::string key = row.engine;
        if (row.scheme != "none") key += "-" + row.scheme;
        key += " k=" + std::to_string(row.k);
        auto& series = grouped[key];
        series.label = key;
        series.points.emplace_back(row.beta, metric(row));
      }
      std::vector<SvgSeries> out;
      for (auto& [key, series] : grouped) {
        std::sort(series.points.begin(), series.points.end());
        out.push_back(std::move(series));
      }
      return out;
    };
    const auto out_path = [&](const std::string& file) {
      return (std::filesystem::path(config.out_dir) / file).string();
    };
    write_line_plot_svg(
        out_path("utility_rel.svg"), "relative utility vs lazy-greedy",
        "beta", "relative utility",
        series_for([](const ReportRow& r) { return r.utility_rel_mean; }),
        false);
    write_line_plot_svg(
        out_path("exec_calls_rel.svg"),
        "relative oracle calls (excluding preprocessing)", "beta",
        "relative calls",
        series_for([](const ReportRow& r) { return r.exec_calls_rel_mean; }),
        true);
    write_line_plot_svg(
        out_path("total_calls_rel.svg"),
        "relative oracle calls (including preprocessing)", "beta",
        "relative calls",
        series_for([](const ReportRow& r) { return r.total_calls_rel_mean; }),
        false);
  }

  for (const auto& row : rows) {
    log << row.engine << " " << row.scheme << " beta=" << row.beta
        << " k=" << row.k << ": rel utility " << row.utility_rel_mean
        << " (std " << row.utility_rel_std << "), rel exec calls "
        << row.exec_calls_rel_mean << ", rel total calls "
        << row.total_calls_rel_mean;
    if (row.early_exits > 0) log << ", early exits " << row.early_exits;
    if (row.warnings > 0) log << ", warnings " << row.warnings;
    log << "\n";
  }
  return {std::move(rows), report_path};
}

}  // namespace submax

#endif  // SUBMAX_EXPERIMENT_HPP_
