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

// Built-in objective families (facility location, coverage, modular),
// synthetic smoothed-instance generators, Lloyd's clustering for ground-set
// construction, and singleton normalization.

#ifndef SUBMAX_FUNCTIONS_HPP_
#define SUBMAX_FUNCTIONS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "submax/core.hpp"
#include "submax/rng.hpp"

namespace submax {

enum class Metric { kManhattan, kSquaredEuclidean };

inline double point_distance(std::span<const double> a,
                             std::span<const double> b, Metric metric) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += metric == Metric::kManhattan ? std::abs(diff) : diff * diff;
  }
  return d;
}

struct PointCloudDataset {
  std::vector<std::vector<double>> points;
  Metric metric = Metric::kSquaredEuclidean;

  int dimension() const {
    return points.empty() ? 0 : static_cast<int>(points.front().size());
  }
  void validate() const {
    if (points.empty()) throw InputError("point cloud: at least one point");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw InputError("point cloud: dimension must be >= 1");
    for (const auto& p : points) {
      if (p.size() != dim) {
        throw InputError("point cloud: inconsistent dimensions");
      }
    }
  }
};

struct BipartiteDataset {
  int left_size = 0;   // one component per left node
  int right_size = 0;  // the ground set
  std::vector<std::pair<int, int>> edges;

  void validate() const {
    if (left_size < 1 || right_size < 1) {
      throw InputError("bipartite: both sides must be non-empty");
    }
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= left_size || v < 0 || v >= right_size) {
        throw InputError("bipartite: edge index out of range");
      }
    }
  }
};

// f_v(S) = max_e d(v, e) - min_{e in S} d(v, e); the empty minimum is
// defined as max_e d(v, e), which forces f_v(empty) = 0.
class FacilityLocationFamily : public ComponentFamily {
 public:
  FacilityLocationFamily(const PointCloudDataset& data,
                         const std::vector<std::vector<double>>& centers) {
    data.validate();
    if (centers.empty()) {
      throw InputError("facility location: at least one center");
    }
    n_ = static_cast<int>(centers.size());
    count_ = static_cast<int>(data.points.size());
    const std::size_t dim = data.points.front().size();
    for (const auto& c : centers) {
      if (c.size() != dim) {
        throw InputError("facility location: center dimension mismatch");
      }
    }
    distances_.resize(static_cast<std::size_t>(count_) * n_);
    row_max_.resize(static_cast<std::size_t>(count_));
    for (int v = 0; v < count_; ++v) {
      double worst = 0.0;
      for (int e = 0; e < n_; ++e) {
        const double d = point_distance(data.points[static_cast<std::size_t>(v)],
                                        centers[static_cast<std::size_t>(e)],
                                        data.metric);
        distances_[static_cast<std::size_t>(v) * n_ + e] = d;
        worst = std::max(worst, d);
      }
      row_max_[static_cast<std::size_t>(v)] = worst;
    }
  }

  int count() const override { return count_; }
  int ground_size() const { return n_; }

  double value(int v, std::span<const int> s) const override {
    if (s.empty()) return 0.0;
    const double* row = &distances_[static_cast<std::size_t>(v) * n_];
    double nearest = std::numeric_limits<double>::infinity();
    for (int e : s) nearest = std::min(nearest, row[e]);
    return row_max_[static_cast<std::size_t>(v)] - nearest;
  }

 private:
  int count_ = 0;
  int n_ = 0;
  std::vector<double> distances_;
  std::vector<double> row_max_;
};

// One 0/1 component per left node: f_v(S) = 1 iff v is adjacent to some
// element of S. Adjacency is stored as bit rows over the ground set, which
// also collapses duplicate edges.
class CoverageFamily : public ComponentFamily {
 public:
  explicit CoverageFamily(const BipartiteDataset& data) {
    data.validate();
    left_ = data.left_size;
    n_ = data.right_size;
    words_ = (n_ + 63) / 64;
    bits_.assign(static_cast<std::size_t>(left_) * words_, 0);
    for (const auto& [u, v] : data.edges) {
      bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |=
          1ULL << (v & 63);
    }
  }

  int count() const override { return left_; }
  int ground_size() const { return n_; }

  double value(int v, std::span<const int> s) const override {
    const std::uint64_t* row = &bits_[static_cast<std::size_t>(v) * words_];
    for (int e : s) {
      if (row[e >> 6] & (1ULL << (e & 63))) return 1.0;
    }
    return 0.0;
  }

 private:
  int left_ = 0;
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// f^i(S) = sum_{e in S} values[i][e].
class ModularFamily : public ComponentFamily {
 public:
  explicit ModularFamily(std::vector<std::vector<double>> values)
      : values_(std::move(values)) {
    if (values_.empty() || values_.front().empty()) {
      throw InputError("modular: non-empty value matrix required");
    }
    const std::size_t n = values_.front().size();
    for (const auto& row : values_) {
      if (row.size() != n) throw InputError("modular: ragged value matrix");
      for (double v : row) {
        if (!(v >= 0.0)) throw InputError("modular: negative entry");
      }
    }
  }

  int count() const override { return static_cast<int>(values_.size()); }
  int ground_size() const { return static_cast<int>(values_.front().size()); }

  double value(int i, std::span<const int> s) const override {
    const auto& row = values_[static_cast<std::size_t>(i)];
    double total = 0.0;
    for (int e : s) total += row[static_cast<std::size_t>(e)];
    return total;
  }

 private:
  std::vector<std::vector<double>> values_;
};

// f^i(S) = max_{e in S} singleton(i, e): the weighted-coverage realization
// used for smoothed instances. Rows may be shared by blocks of components,
// which keeps storage at (#blocks x n).
class MaxSingletonFamily : public ComponentFamily {
 public:
  // rows: (#blocks x n) singleton values; component i uses row i / block_size.
  MaxSingletonFamily(int component_count, int block_size,
                     std::vector<double> rows, int ground_size)
      : count_(component_count),
        block_size_(block_size),
        n_(ground_size),
        rows_(std::move(rows)) {
    if (count_ < 1 || block_size_ < 1 || n_ < 1) {
      throw InputError("max-singleton family: invalid shape");
    }
    const int blocks = (count_ + block_size_ - 1) / block_size_;
    if (static_cast<std::size_t>(blocks) * n_ != rows_.size()) {
      throw InputError("max-singleton family: row storage mismatch");
    }
    for (double v : rows_) {
      if (!(v >= 0.0)) throw InputError("max-singleton family: negative value");
    }
  }

  int count() const override { return count_; }
  int ground_size() const { return n_; }

  double singleton(int i, int e) const {
    return rows_[static_cast<std::size_t>(i / block_size_) * n_ + e];
  }

  double value(int i, std::span<const int> s) const override {
    const double* row =
        &rows_[static_cast<std::size_t>(i / block_size_) * n_];
    double best = 0.0;
    for (int e : s) best = std::max(best, row[e]);
    return best;
  }

 private:
  int count_;
  int block_size_;
  int n_;
  std::vector<double> rows_;
};

// f(S) = |S|^2: deliberately supermodular, for exercising the validators.
class SupermodularFixtureFamily : public ComponentFamily {
 public:
  explicit SupermodularFixtureFamily(int ground_size) : n_(ground_size) {
    if (n_ < 1) throw InputError("supermodular fixture: empty ground set");
  }
  int count() const override { return 1; }
  int ground_size() const { return n_; }
  double value(int, std::span<const int> s) const override {
    return static_cast<double>(s.size()) * static_cast<double>(s.size());
  }

 private:
  int n_;
};

inline DecomposableObjective facility_location_objective(
    const PointCloudDataset& data,
    const std::vector<std::vector<double>>& centers) {
  auto family = std::make_shared<FacilityLocationFamily>(data, centers);
  GroundSet ground(family->ground_size());
  return DecomposableObjective(std::move(ground), std::move(family));
}

inline DecomposableObjective coverage_objective(const BipartiteDataset& data) {
  auto family = std::make_shared<CoverageFamily>(data);
  GroundSet ground(family->ground_size());
  return DecomposableObjective(std::move(ground), std::move(family));
}

inline DecomposableObjective modular_objective(
    std::vector<std::vector<double>> values) {
  auto family = std::make_shared<ModularFamily>(std::move(values));
  GroundSet ground(family->ground_size());
  return DecomposableObjective(std::move(ground), std::move(family));
}

inline DecomposableObjective supermodular_fixture_objective(int ground_size) {
  auto family = std::make_shared<SupermodularFixtureFamily>(ground_size);
  return DecomposableObjective(GroundSet(ground_size), std::move(family));
}

// Parameters for a synthetic smoothed instance. Model 1 draws every
// singleton value f^i(e) with mean phi; Model 2 guarantees mean phi only
// for one designated element, all other columns get mean off_mean.
// Components are grouped into blocks of size d: rows are shared inside a
// block (dependency within the block only), blocks are independent.
struct SmoothedInstanceSpec {
  int model = 1;  // 1 | 2
  int n = 1;
  int component_count = 1;  // N
  double phi = 0.5;
  int d = 1;
  std::uint64_t seed = 0;
  double off_mean = 0.01;   // model 2 non-designated column mean
  double half_width = 0.1;  // spread of the uniform draw around a column mean

  void validate() const {
    if (model != 1 && model != 2) throw InputError("smoothed: model must be 1 or 2");
    if (n < 1) throw InputError("smoothed: n must be >= 1");
    if (component_count < 1) throw InputError("smoothed: N must be >= 1");
    if (!(phi >= 0.0 && phi <= 1.0)) throw InputError("smoothed: phi must be in [0,1]");
    if (d < 1 || d > component_count) throw InputError("smoothed: d must be in [1, N]");
    if (!(off_mean >= 0.0 && off_mean <= 1.0)) throw InputError("smoothed: off_mean must be in [0,1]");
    if (!(half_width >= 0.0)) throw InputError("smoothed: half_width must be >= 0");
  }
};

struct SmoothedInstance {
  DecomposableObjective objective;
  std::shared_ptr<const MaxSingletonFamily> family;
  int star_element = 0;  // the designated element (model 2; 0 for model 1)
  std::vector<std::string> warnings;
};

// Uniform[mu - h, mu + h] with h clipped so the support stays inside [0,1];
// the draw keeps mean exactly mu.
inline double draw_around_mean(double mu, double half_width, double u) {
  const double h = std::min({half_width, mu, 1.0 - mu});
  return mu - h + 2.0 * h * u;
}

inline SmoothedInstance generate_smoothed_instance(
    const SmoothedInstanceSpec& spec) {
  spec.validate();
  const int blocks = (spec.component_count + spec.d - 1) / spec.d;
  StreamRng rng(spec.seed);

  int star = 0;
  if (spec.model == 2) {
    star = static_cast<int>(
        rng.derive(1).next_below(static_cast<std::uint64_t>(spec.n)));
  }

  const StreamRng draws = rng.derive(2);
  std::vector<double> rows(static_cast<std::size_t>(blocks) * spec.n);
  for (int b = 0; b < blocks; ++b) {
    for (int e = 0; e < spec.n; ++e) {
      const double mu =
          (spec.model == 1 || e == star) ? spec.phi : spec.off_mean;
      const double u = draws.uniform_at(
          static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(spec.n) +
          static_cast<std::uint64_t>(e));
      rows[static_cast<std::size_t>(b) * spec.n + e] =
          draw_around_mean(mu, spec.half_width, u);
    }
  }

  auto family = std::make_shared<MaxSingletonFamily>(
      spec.component_count, spec.d, std::move(rows), spec.n);
  SmoothedInstance out{
      DecomposableObjective(GroundSet(spec.n), family), family, star, {}};
  if (spec.model == 1) {
    const double needed =
        spec.phi > 0.0
            ? (spec.d / spec.phi) *
                  std::log(static_cast<double>(spec.n) * spec.d)
            : std::numeric_limits<double>::infinity();
    if (!(spec.component_count >= needed)) {
      out.warnings.push_back(
          "model 1 sample size below (d/phi)*ln(n*d); concentration of F(e) "
          "is not guaranteed");
    }
  }
  return out;
}

// Standard Lloyd's: squared-Euclidean assignment, mean updates, seeded
// uniform selection of m distinct initial centers from the data. Empty
// clusters keep their previous center. Stops early once assignments are
// stable.
inline std::vector<std::vector<double>> lloyd_centers(
    const PointCloudDataset& data, int m, int iterations, StreamRng rng) {
  data.validate();
  const int count = static_cast<int>(data.points.size());
  if (m < 1) throw InputError("lloyd: m must be positive");
  if (m > count) throw InputError("lloyd: more centers than points");
  if (iterations < 1) throw InputError("lloyd: iterations must be >= 1");
  const std::size_t dim = data.points.front().size();

  std::vector<std::vector<double>> centers;
  centers.reserve(static_cast<std::size_t>(m));
  for (int idx : rng.sample_indices(count, m)) {
    centers.push_back(data.points[static_cast<std::size_t>(idx)]);
  }

  std::vector<int> assignment(static_cast<std::size_t>(count), -1);
  for (int it = 0; it < iterations; ++it) {
    bool changed = false;
    for (int v = 0; v < count; ++v) {
      const auto& p = data.points[static_cast<std::size_t>(v)];
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < m; ++c) {
        const double d = point_distance(
            p, centers[static_cast<std::size_t>(c)], Metric::kSquaredEuclidean);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assignment[static_cast<std::size_t>(v)] != best) {
        assignment[static_cast<std::size_t>(v)] = best;
        changed = true;
      }
    }
    if (!changed) break;

    std::vector<std::vector<double>> sums(
        static_cast<std::size_t>(m), std::vector<double>(dim, 0.0));
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    for (int v = 0; v < count; ++v) {
      const int c = assignment[static_cast<std::size_t>(v)];
      ++counts[static_cast<std::size_t>(c)];
      const auto& p = data.points[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < dim; ++i) {
        sums[static_cast<std::size_t>(c)][i] += p[i];
      }
    }
    for (int c = 0; c < m; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) continue;  // keep old
      for (std::size_t i = 0; i < dim; ++i) {
        centers[static_cast<std::size_t>(c)][i] =
            sums[static_cast<std::size_t>(c)][i] /
            counts[static_cast<std::size_t>(c)];
      }
    }
  }
  return centers;
}

struct NormalizedObjective {
  DecomposableObjective objective;
  double scale = 1.0;  // weights were multiplied by this factor
};

// Rescales all component weights by 1 / max_{i,e} w_i f^i(e) so every
// singleton value lies in [0,1]. Positive scaling leaves every engine's
// argmax decisions unchanged. Charges n * |support| preprocessing calls.
inline NormalizedObjective normalize_singletons(
    const DecomposableObjective& objective, CallCounter& counter) {
  const int n = objective.ground_size();
  double max_singleton = 0.0;
  int single[1];
  for (int e = 0; e < n; ++e) {
    single[0] = e;
    for (int i : objective.support()) {
      max_singleton =
          std::max(max_singleton, objective.component_value(
                                      i, single, counter, Phase::kPreprocessing));
    }
  }
  if (!(max_singleton > 0.0)) {
    throw InputError("normalize_singletons: all singleton values are zero");
  }
  const double scale = 1.0 / max_singleton;
  return {objective.scaled(scale), scale};
}

}  // namespace submax

#endif  // SUBMAX_FUNCTIONS_HPP_
