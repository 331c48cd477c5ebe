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

// submax: maximize decomposable monotone submodular functions with exact,
// lazy, stochastic, sparsifier and mini-batch greedy engines.
//
// Subcommands: gen | probs | run | validate.
// Exit status: 0 success, 1 config error, 2 validation failure, 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "submax/submax.hpp"

namespace {

submax::Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw submax::IoError("could not open config " + path);
  submax::Json json;
  try {
    in >> json;
  } catch (const submax::Json::parse_error& e) {
    throw submax::ConfigError(std::string("bad config JSON: ") + e.what());
  }
  return json;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "submax: mini-batch, sparsifier, lazy and stochastic greedy "
      "maximization of decomposable submodular functions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";
  std::string config_path;
  app.add_option("--seed", seed, "global RNG seed");
  app.add_option("--threads", threads, "worker threads for the run grid");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--config", config_path, "JSON config file (run)");

  // --- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate synthetic datasets");
  gen->require_subcommand(1);
  gen->fallthrough();

  submax::SmoothedInstanceSpec smoothed_spec;
  std::string gen_name;
  auto* gen_smoothed =
      gen->add_subcommand("smoothed", "smoothed-model instance (CSV of "
                                      "per-component singleton values)");
  gen_smoothed->fallthrough();
  gen_smoothed->add_option("--model", smoothed_spec.model, "1 or 2");
  gen_smoothed->add_option("--n", smoothed_spec.n, "ground-set size");
  gen_smoothed->add_option("--N", smoothed_spec.component_count,
                           "component count");
  gen_smoothed->add_option("--phi", smoothed_spec.phi, "mean lower bound");
  gen_smoothed->add_option("--d", smoothed_spec.d, "dependency block size");
  gen_smoothed->add_option("--off-mean", smoothed_spec.off_mean,
                           "model-2 mean of non-designated columns");
  gen_smoothed->add_option("--half-width", smoothed_spec.half_width,
                           "spread of the uniform draws");
  gen_smoothed->add_option("--name", gen_name, "output file stem");

  int points_clusters = 5, points_per_cluster = 200, points_dim = 2;
  double points_spread = 1.0;
  std::string points_metric = "squared_euclidean";
  auto* gen_points =
      gen->add_subcommand("points", "Gaussian-blob point cloud CSV");
  gen_points->fallthrough();
  gen_points->add_option("--clusters", points_clusters, "blob count");
  gen_points->add_option("--per-cluster", points_per_cluster,
                         "points per blob");
  gen_points->add_option("--dim", points_dim, "dimension");
  gen_points->add_option("--spread", points_spread, "blob standard deviation");
  gen_points
      ->add_option("--metric", points_metric,
                   "manhattan | squared_euclidean (recorded in the manifest)")
      ->check(CLI::IsMember({"manhattan", "squared_euclidean"}));
  gen_points->add_option("--name", gen_name, "output file stem");

  int bip_left = 1000, bip_right = 50, bip_edges = 3;
  auto* gen_bipartite =
      gen->add_subcommand("bipartite", "random bipartite graph CSV");
  gen_bipartite->fallthrough();
  gen_bipartite->add_option("--left", bip_left, "label count (components)");
  gen_bipartite->add_option("--right", bip_right, "ground-set size");
  gen_bipartite->add_option("--edges-per-left", bip_edges,
                            "edges per left node");
  gen_bipartite->add_option("--name", gen_name, "output file stem");

  // --- probs ---------------------------------------------------------------
  submax::DatasetSpec probs_dataset;
  std::string probs_cache_path;
  auto* probs = app.add_subcommand(
      "probs", "compute and cache weighted sampling probabilities");
  probs->fallthrough();
  probs->add_option("--data", probs_dataset.path, "dataset CSV")->required();
  probs->add_option("--family", probs_dataset.family,
                    "coverage | facility_location | smoothed")
      ->required();
  probs->add_option("--centers", probs_dataset.centers,
                    "facility_location: Lloyd's center count");
  probs->add_option("--iters", probs_dataset.lloyd_iterations,
                    "facility_location: Lloyd's iterations");
  probs->add_option("--cache", probs_cache_path,
                    "cache CSV path (default <out>/<stem>_probs.csv)");

  // --- run -----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "execute an experiment grid");
  run->fallthrough();
  submax::DatasetSpec run_dataset;
  std::vector<std::string> run_engines, run_schemes;
  std::vector<double> run_betas;
  std::vector<int> run_ks;
  int run_reps = 0;
  double run_stochastic_eps = 0.0;
  std::string run_sparsifier_inner, run_probs_cache;
  bool run_svg = false;
  auto* opt_builtin =
      run->add_option("--builtin", run_dataset.builtin,
                      "built-in dataset: coverage | facility | modular | "
                      "supermodular");
  auto* opt_data = run->add_option("--data", run_dataset.path, "dataset CSV");
  auto* opt_family = run->add_option("--family", run_dataset.family,
                                     "objective family for --data");
  auto* opt_centers =
      run->add_option("--centers", run_dataset.centers, "Lloyd's centers");
  auto* opt_iters = run->add_option("--iters", run_dataset.lloyd_iterations,
                                    "Lloyd's iterations");
  auto* opt_engines =
      run->add_option("--engines", run_engines,
                      "naive,lazy,stochastic,minibatch,sparsifier")
          ->delimiter(',');
  auto* opt_schemes =
      run->add_option("--schemes", run_schemes, "uniform,weighted")
          ->delimiter(',');
  auto* opt_beta =
      run->add_option("--beta", run_betas, "budget grid")->delimiter(',');
  auto* opt_k = run->add_option("--k", run_ks, "cardinality grid")
                    ->delimiter(',');
  auto* opt_reps = run->add_option("--reps", run_reps, "repetitions per cell");
  auto* opt_eps = run->add_option("--stochastic-eps", run_stochastic_eps,
                                  "stochastic-greedy eps");
  auto* opt_inner = run->add_option("--sparsifier-inner", run_sparsifier_inner,
                                    "naive | lazy | stochastic");
  auto* opt_probs_cache = run->add_option("--probs-cache", run_probs_cache,
                                          "reuse a cached weighted-p CSV");
  auto* opt_svg = run->add_flag("--svg", run_svg, "also write SVG panels");

  // --- validate --------------------------------------------------------------
  submax::DatasetSpec validate_dataset_spec;
  int validate_trials = 1000;
  auto* validate =
      app.add_subcommand("validate", "monotonicity/submodularity checks, "
                                     "curvature and empirical phi");
  validate->fallthrough();
  validate->add_option("--builtin", validate_dataset_spec.builtin,
                       "built-in dataset name");
  validate->add_option("--data", validate_dataset_spec.path, "dataset CSV");
  validate->add_option("--family", validate_dataset_spec.family,
                       "objective family for --data");
  validate->add_option("--centers", validate_dataset_spec.centers,
                       "Lloyd's centers");
  validate->add_option("--iters", validate_dataset_spec.lloyd_iterations,
                       "Lloyd's iterations");
  validate->add_option("--trials", validate_trials, "spot-check trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_smoothed->parsed()) {
      smoothed_spec.seed = seed;
      const auto result = submax::generate_smoothed_dataset(
          smoothed_spec, out_dir,
          gen_name.empty() ? "smoothed" : gen_name);
      for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      std::cout << "wrote " << result.csv_path << " and "
                << submax::manifest_path_for(result.csv_path) << "\n";
    } else if (gen_points->parsed()) {
      const auto result = submax::generate_points_dataset(
          points_clusters, points_per_cluster, points_dim, points_spread,
          points_metric == "manhattan" ? submax::Metric::kManhattan
                                       : submax::Metric::kSquaredEuclidean,
          seed, out_dir, gen_name.empty() ? "points" : gen_name);
      std::cout << "wrote " << result.csv_path << " ("
                << result.manifest.at("N").get<int>() << " rows)\n";
    } else if (gen_bipartite->parsed()) {
      const auto result = submax::generate_bipartite_dataset(
          bip_left, bip_right, bip_edges, seed, out_dir,
          gen_name.empty() ? "bipartite" : gen_name);
      std::cout << "wrote " << result.csv_path << "\n";
    } else if (probs->parsed()) {
      if (probs_cache_path.empty()) {
        const auto stem =
            std::filesystem::path(probs_dataset.path).stem().string();
        probs_cache_path =
            (std::filesystem::path(out_dir) / (stem + "_probs.csv")).string();
      }
      const auto result = submax::compute_probability_cache(
          probs_dataset, probs_cache_path, seed);
      if (result.cache_hit) {
        std::cout << "cache hit: " << result.cache_path
                  << " (0 additional oracle calls)\n";
      } else {
        std::cout << "wrote " << result.cache_path << " ("
                  << result.preprocessing_calls << " preprocessing calls)\n";
      }
    } else if (run->parsed()) {
      submax::Json config_json = submax::Json::object();
      if (!config_path.empty()) config_json = load_config_file(config_path);
      auto config = submax::parse_experiment_config(config_json);
      // flags override file values
      if (opt_builtin->count()) config.dataset.builtin = run_dataset.builtin;
      if (opt_data->count()) config.dataset.path = run_dataset.path;
      if (opt_family->count()) config.dataset.family = run_dataset.family;
      if (opt_centers->count()) config.dataset.centers = run_dataset.centers;
      if (opt_iters->count()) {
        config.dataset.lloyd_iterations = run_dataset.lloyd_iterations;
      }
      if (opt_engines->count()) config.engines = run_engines;
      if (opt_schemes->count()) config.schemes = run_schemes;
      if (opt_beta->count()) config.betas = run_betas;
      if (opt_k->count()) config.ks = run_ks;
      if (opt_reps->count()) config.repetitions = run_reps;
      if (opt_eps->count()) config.stochastic_eps = run_stochastic_eps;
      if (opt_inner->count()) config.sparsifier_inner = run_sparsifier_inner;
      if (opt_probs_cache->count()) config.probs_cache = run_probs_cache;
      if (opt_svg->count()) config.svg = run_svg;
      if (app.count("--seed")) config.seed = seed;
      if (app.count("--threads")) config.threads = threads;
      if (app.count("--out")) config.out_dir = out_dir;
      const auto result = submax::run_experiment(config, std::cout);
      std::cout << "wrote " << result.report_path << "\n";
    } else if (validate->parsed()) {
      const auto result = submax::validate_dataset(validate_dataset_spec,
                                                   validate_trials, seed);
      std::cout << result.report.dump(2) << "\n";
      if (!result.passed) {
        std::cerr << "validation failed\n";
        return 2;
      }
    }
  } catch (const submax::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const submax::DegenerateObjectiveError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const submax::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const submax::InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
