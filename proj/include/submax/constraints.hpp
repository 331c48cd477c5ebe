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

// Downward-closed independence systems. They supply the candidate set A_j
// that limits which elements may extend the greedy solution at step j:
// A_j = { e not in S : S + e independent }.

#ifndef SUBMAX_CONSTRAINTS_HPP_
#define SUBMAX_CONSTRAINTS_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "submax/core.hpp"
#include "submax/rng.hpp"

namespace submax {

// Immutable after construction; queries may run concurrently.
class ConstraintSystem {
 public:
  virtual ~ConstraintSystem() = default;

  virtual int ground_size() const = 0;
  // Elements in s are distinct. Must be downward closed and accept the
  // empty set.
  virtual bool is_independent(std::span<const int> s) const = 0;
  // An upper bound on |S| over all independent S (an iteration cap for the
  // engines; n when nothing tighter is known).
  virtual int solution_bound() const = 0;

  // Exactly the elements whose addition keeps s independent, ascending.
  virtual std::vector<int> candidates(const SolutionSet& s) const {
    if (!is_independent(s.elements())) {
      throw InputError("candidates: set is not independent");
    }
    std::vector<int> extended(s.elements());
    extended.push_back(0);
    std::vector<int> out;
    for (int e = 0; e < ground_size(); ++e) {
      if (s.contains(e)) continue;
      extended.back() = e;
      if (is_independent(extended)) out.push_back(e);
    }
    return out;
  }
};

// |S| <= k.
class CardinalityConstraint : public ConstraintSystem {
 public:
  CardinalityConstraint(int k, int ground_size)
      : k_(k), ground_size_(ground_size) {
    if (k < 1) throw InputError("CardinalityConstraint: k must be positive");
    if (ground_size < 1) {
      throw InputError("CardinalityConstraint: empty ground set");
    }
  }

  int k() const { return k_; }
  int ground_size() const override { return ground_size_; }
  bool is_independent(std::span<const int> s) const override {
    return static_cast<int>(s.size()) <= k_;
  }
  int solution_bound() const override { return std::min(k_, ground_size_); }

  std::vector<int> candidates(const SolutionSet& s) const override {
    if (!is_independent(s.elements())) {
      throw InputError("candidates: set is not independent");
    }
    std::vector<int> out;
    if (s.size() >= k_) return out;
    for (int e = 0; e < ground_size_; ++e) {
      if (!s.contains(e)) out.push_back(e);
    }
    return out;
  }

 private:
  int k_;
  int ground_size_;
};

// Disjoint parts covering the ground set, with a capacity per part.
class PartitionMatroid : public ConstraintSystem {
 public:
  PartitionMatroid(int ground_size, std::vector<std::vector<int>> parts,
                   std::vector<int> capacities)
      : ground_size_(ground_size),
        capacities_(std::move(capacities)),
        part_of_(static_cast<std::size_t>(ground_size), -1) {
    if (ground_size < 1) throw InputError("PartitionMatroid: empty ground set");
    if (parts.size() != capacities_.size()) {
      throw InputError("PartitionMatroid: one capacity per part required");
    }
    part_sizes_.assign(parts.size(), 0);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (capacities_[p] < 0) {
        throw InputError("PartitionMatroid: negative capacity");
      }
      for (int e : parts[p]) {
        if (e < 0 || e >= ground_size) {
          throw InputError("PartitionMatroid: element out of range");
        }
        if (part_of_[static_cast<std::size_t>(e)] != -1) {
          throw InputError("PartitionMatroid: parts must be disjoint");
        }
        part_of_[static_cast<std::size_t>(e)] = static_cast<int>(p);
        ++part_sizes_[p];
      }
    }
    for (int p : part_of_) {
      if (p == -1) throw InputError("PartitionMatroid: parts must cover E");
    }
  }

  int ground_size() const override { return ground_size_; }

  bool is_independent(std::span<const int> s) const override {
    std::vector<int> used(capacities_.size(), 0);
    for (int e : s) {
      const int p = part_of_[static_cast<std::size_t>(e)];
      if (++used[static_cast<std::size_t>(p)] >
          capacities_[static_cast<std::size_t>(p)]) {
        return false;
      }
    }
    return true;
  }

  int solution_bound() const override {
    int bound = 0;
    for (std::size_t p = 0; p < capacities_.size(); ++p) {
      bound += std::min(capacities_[p], part_sizes_[p]);
    }
    return std::max(bound, 1);
  }

 private:
  int ground_size_;
  std::vector<int> capacities_;
  std::vector<int> part_of_;
  std::vector<int> part_sizes_;
};

// Independent iff independent in every member system (a p-system for p
// matroids).
class MatroidIntersection : public ConstraintSystem {
 public:
  explicit MatroidIntersection(
      std::vector<std::shared_ptr<const ConstraintSystem>> matroids)
      : matroids_(std::move(matroids)) {
    if (matroids_.empty()) {
      throw InputError("MatroidIntersection: at least one matroid required");
    }
    for (const auto& m : matroids_) {
      if (!m) throw InputError("MatroidIntersection: null matroid");
      if (m->ground_size() != matroids_.front()->ground_size()) {
        throw InputError("MatroidIntersection: ground sets must agree");
      }
    }
  }

  int ground_size() const override { return matroids_.front()->ground_size(); }

  bool is_independent(std::span<const int> s) const override {
    for (const auto& m : matroids_) {
      if (!m->is_independent(s)) return false;
    }
    return true;
  }

  int solution_bound() const override {
    int bound = matroids_.front()->solution_bound();
    for (const auto& m : matroids_) {
      bound = std::min(bound, m->solution_bound());
    }
    return bound;
  }

 private:
  std::vector<std::shared_ptr<const ConstraintSystem>> matroids_;
};

// Ground set = edges of a graph; independent sets are matchings (a
// 2-system).
class MatchingSystem : public ConstraintSystem {
 public:
  MatchingSystem(int vertex_count, std::vector<std::pair<int, int>> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count < 2) {
      throw InputError("MatchingSystem: at least two vertices required");
    }
    if (edges_.empty()) {
      throw InputError("MatchingSystem: at least one edge required");
    }
    for (const auto& [u, v] : edges_) {
      if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count) {
        throw InputError("MatchingSystem: endpoint out of range");
      }
      if (u == v) throw InputError("MatchingSystem: self-loops not allowed");
    }
  }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int ground_size() const override { return static_cast<int>(edges_.size()); }

  bool is_independent(std::span<const int> s) const override {
    std::vector<char> used(static_cast<std::size_t>(vertex_count_), 0);
    for (int e : s) {
      const auto& [u, v] = edges_[static_cast<std::size_t>(e)];
      if (used[static_cast<std::size_t>(u)] ||
          used[static_cast<std::size_t>(v)]) {
        return false;
      }
      used[static_cast<std::size_t>(u)] = 1;
      used[static_cast<std::size_t>(v)] = 1;
    }
    return true;
  }

  int solution_bound() const override {
    return std::min(ground_size(), vertex_count_ / 2);
  }

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
};

// Sampled lower bound on the system's p: over random restrictions E' of the
// ground set, grows random maximal independent sets inside E' and returns
// the largest observed (max size / min size) ratio. Returns 1 when every
// sampled restriction ties; intended for small ground sets (n <= 20).
inline double empirical_p(const ConstraintSystem& system, int trials,
                          std::uint64_t seed) {
  if (trials < 1) throw InputError("empirical_p: trials must be positive");
  const int n = system.ground_size();
  StreamRng rng(seed);
  double best_ratio = 1.0;
  constexpr int kCompletionsPerRestriction = 10;

  for (int t = 0; t < trials; ++t) {
    StreamRng trial_rng = rng.derive(static_cast<std::uint64_t>(t));
    std::vector<int> restriction;
    for (int e = 0; e < n; ++e) {
      if (trial_rng.next_uniform() < 0.5) restriction.push_back(e);
    }
    if (restriction.empty()) continue;

    int min_size = n + 1;
    int max_size = 0;
    for (int c = 0; c < kCompletionsPerRestriction; ++c) {
      std::vector<int> order(restriction);
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(
                    trial_rng.next_below(order.size() - i));
        std::swap(order[i], order[j]);
      }
      std::vector<int> grown;
      for (int e : order) {
        grown.push_back(e);
        if (!system.is_independent(grown)) grown.pop_back();
      }
      const int size = static_cast<int>(grown.size());
      min_size = std::min(min_size, size);
      max_size = std::max(max_size, size);
    }
    if (min_size > 0 && max_size > min_size) {
      best_ratio = std::max(
          best_ratio, static_cast<double>(max_size) / min_size);
    }
  }
  return best_ratio;
}

}  // namespace submax

#endif  // SUBMAX_CONSTRAINTS_HPP_
