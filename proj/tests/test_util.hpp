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

// Shared test fixtures: the small worked examples used throughout the
// suites and seeded random-instance generators.

#ifndef SUBMAX_TESTS_TEST_UTIL_HPP_
#define SUBMAX_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "submax/constraints.hpp"
#include "submax/core.hpp"
#include "submax/functions.hpp"
#include "submax/rng.hpp"

namespace submax::testing {

// Two left nodes u1, u2; ground set {s1, s2}; edges u1-s1, u2-s1, u2-s2.
inline DecomposableObjective coverage_example() {
  BipartiteDataset data;
  data.left_size = 2;
  data.right_size = 2;
  data.edges = {{0, 0}, {1, 0}, {1, 1}};
  return coverage_objective(data);
}

// One data point v = (0,0); centers e1 = (0,1), e2 = (3,0); Manhattan.
inline DecomposableObjective facility_example() {
  PointCloudDataset data;
  data.points = {{0.0, 0.0}};
  data.metric = Metric::kManhattan;
  return facility_location_objective(data, {{0.0, 1.0}, {3.0, 0.0}});
}

// Single modular component with singleton values 5, 3, 1.
inline DecomposableObjective modular_example() {
  return modular_objective({{5.0, 3.0, 1.0}});
}

inline DecomposableObjective random_coverage(StreamRng& rng, int n,
                                             int components) {
  BipartiteDataset data;
  data.left_size = components;
  data.right_size = n;
  for (int u = 0; u < components; ++u) {
    const int degree = 1 + static_cast<int>(rng.next_below(3));
    for (int d = 0; d < degree; ++d) {
      data.edges.emplace_back(u, static_cast<int>(rng.next_below(
                                     static_cast<std::uint64_t>(n))));
    }
  }
  return coverage_objective(data);
}

inline DecomposableObjective random_facility(StreamRng& rng, int n,
                                             int points) {
  PointCloudDataset data;
  data.metric = rng.next_uniform() < 0.5 ? Metric::kManhattan
                                         : Metric::kSquaredEuclidean;
  for (int i = 0; i < points; ++i) {
    data.points.push_back({rng.next_uniform() * 10.0,
                           rng.next_uniform() * 10.0});
  }
  std::vector<std::vector<double>> centers;
  for (int e = 0; e < n; ++e) {
    centers.push_back({rng.next_uniform() * 10.0, rng.next_uniform() * 10.0});
  }
  return facility_location_objective(data, centers);
}

inline DecomposableObjective random_modular(StreamRng& rng, int n,
                                            int components) {
  std::vector<std::vector<double>> values(
      static_cast<std::size_t>(components));
  for (auto& row : values) {
    row.resize(static_cast<std::size_t>(n));
    for (double& v : row) v = rng.next_uniform();
  }
  return modular_objective(std::move(values));
}

// Rotates through the built-in families.
inline DecomposableObjective random_objective(StreamRng& rng, int n,
                                              int components) {
  switch (rng.next_below(3)) {
    case 0: return random_coverage(rng, n, components);
    case 1: return random_facility(rng, n, components);
    default: return random_modular(rng, n, components);
  }
}

// A connected-ish random graph; ground set of a MatchingSystem.
inline MatchingSystem random_matching_system(StreamRng& rng,
                                             int max_edges = 20) {
  while (true) {
    const int vertices = 4 + static_cast<int>(rng.next_below(4));
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < vertices; ++u) {
      for (int v = u + 1; v < vertices; ++v) {
        if (rng.next_uniform() < 0.5) edges.emplace_back(u, v);
      }
    }
    if (!edges.empty() && static_cast<int>(edges.size()) <= max_edges) {
      return MatchingSystem(vertices, std::move(edges));
    }
  }
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double stderr_of_mean = 0.0;
};

inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    out.stderr_of_mean =
        out.stddev / std::sqrt(static_cast<double>(xs.size()));
  }
  return out;
}

// Standard error of an empirical frequency estimated from `trials` draws,
// under a hypothesized true rate.
inline double frequency_stderr(double rate, double trials) {
  return std::sqrt(std::max(rate * (1.0 - rate), 1e-12) / trials);
}

}  // namespace submax::testing

#endif  // SUBMAX_TESTS_TEST_UTIL_HPP_
