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

#include <doctest.h>

#include <memory>
#include <vector>

#include "submax/constraints.hpp"
#include "test_util.hpp"

using namespace submax;

namespace {

// All independent subsets of the system, by DFS over ascending extensions.
void enumerate_independent(const ConstraintSystem& system,
                           std::vector<int>& current, int start,
                           std::vector<std::vector<int>>& out) {
  out.push_back(current);
  for (int e = start; e < system.ground_size(); ++e) {
    current.push_back(e);
    if (system.is_independent(current)) {
      enumerate_independent(system, current, e + 1, out);
    }
    current.pop_back();
  }
}

}  // namespace

TEST_CASE("cardinality candidates") {
  CardinalityConstraint system(2, 3);
  SolutionSet s;
  s.add(0);
  CHECK(system.candidates(s) == std::vector<int>{1, 2});
  s.add(2);
  CHECK(system.candidates(s).empty());
  CHECK(system.solution_bound() == 2);
}

TEST_CASE("matching system on a triangle") {
  // edges a=(0,1), b=(1,2), c=(0,2)
  MatchingSystem system(3, {{0, 1}, {1, 2}, {0, 2}});
  SolutionSet s;
  s.add(0);
  CHECK(system.candidates(s).empty());
  CHECK(system.is_independent(std::vector<int>{0}));
  CHECK(!system.is_independent(std::vector<int>{0, 1}));
}

TEST_CASE("partition matroid candidates") {
  PartitionMatroid system(3, {{0, 1}, {2}}, {1, 1});
  SolutionSet s;
  s.add(0);
  CHECK(system.candidates(s) == std::vector<int>{2});
  CHECK(system.solution_bound() == 2);
  CHECK_THROWS_AS(PartitionMatroid(3, {{0, 1}}, {1}), InputError);
  CHECK_THROWS_AS(PartitionMatroid(3, {{0, 1}, {1, 2}}, {1, 1}), InputError);
}

TEST_CASE("candidates requires an independent base set") {
  CardinalityConstraint system(1, 3);
  SolutionSet s;
  s.add(0);
  s.add(1);  // not independent under k = 1
  CHECK_THROWS_AS(system.candidates(s), InputError);
}

TEST_CASE("candidates/is_independent consistency by exhaustive enumeration") {
  StreamRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::unique_ptr<ConstraintSystem> system;
    switch (trial % 3) {
      case 0:
        system = std::make_unique<CardinalityConstraint>(
            1 + static_cast<int>(rng.next_below(4)), 6);
        break;
      case 1:
        system = std::make_unique<PartitionMatroid>(
            6, std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}, {5}},
            std::vector<int>{1 + static_cast<int>(rng.next_below(2)),
                             1 + static_cast<int>(rng.next_below(2)), 1});
        break;
      default: {
        auto matching = testing::random_matching_system(rng, 12);
        system = std::make_unique<MatchingSystem>(matching);
        break;
      }
    }
    std::vector<std::vector<int>> independents;
    std::vector<int> scratch;
    enumerate_independent(*system, scratch, 0, independents);
    for (const auto& base : independents) {
      SolutionSet s(base);
      std::vector<int> expected;
      std::vector<int> extended(base);
      extended.push_back(0);
      for (int e = 0; e < system->ground_size(); ++e) {
        if (s.contains(e)) continue;
        extended.back() = e;
        if (system->is_independent(extended)) expected.push_back(e);
      }
      CHECK(system->candidates(s) == expected);
    }
  }
}

TEST_CASE("downward closure on random independent sets") {
  StreamRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto system = testing::random_matching_system(rng, 14);
    // Grow a random maximal independent set, then check all prefixes after
    // random deletions stay independent.
    std::vector<int> grown;
    for (int idx :
         StreamRng(trial).sample_indices(system.ground_size(),
                                         system.ground_size())) {
      grown.push_back(idx);
      if (!system.is_independent(grown)) grown.pop_back();
    }
    std::vector<int> subset;
    for (int e : grown) {
      if (rng.next_uniform() < 0.5) subset.push_back(e);
    }
    CHECK(system.is_independent(subset));
  }
}

TEST_CASE("empirical p") {
  SUBCASE("single matroids report 1") {
    CardinalityConstraint cardinality(3, 8);
    CHECK(empirical_p(cardinality, 100, 3) == doctest::Approx(1.0));
    PartitionMatroid partition(6, {{0, 1, 2}, {3, 4, 5}}, {2, 1});
    CHECK(empirical_p(partition, 100, 3) == doctest::Approx(1.0));
  }
  SUBCASE("path graph matchings form a 2-system") {
    // path 0-1-2-3: maximal matchings {01, 23} and {12}
    MatchingSystem path(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(empirical_p(path, 100, 5) == doctest::Approx(2.0));
  }
  SUBCASE("matroid intersections stay below p") {
    StreamRng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = std::make_shared<PartitionMatroid>(
          6, std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}},
          std::vector<int>{1 + static_cast<int>(rng.next_below(2)), 2});
      auto b = std::make_shared<PartitionMatroid>(
          6, std::vector<std::vector<int>>{{0, 3}, {1, 4}, {2, 5}},
          std::vector<int>{1, 1, 1 + static_cast<int>(rng.next_below(2))});
      MatroidIntersection both({a, b});
      CHECK(empirical_p(both, 200, trial) <= 2.0 + 1e-12);
    }
  }
}
