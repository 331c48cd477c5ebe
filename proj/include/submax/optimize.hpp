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

// Greedy engines: naive, lazy (heap-accelerated), stochastic (subsampled
// candidates), mini-batch (fresh sparsifier per iteration), and
// sparsifier-based (one sparsifier up front), plus a brute-force optimum
// oracle for verification.
//
// Conventions shared by every engine: ties in the argmax are broken towards
// the smallest element index; the reported value is always the true F of the
// solution (sampled values appear only in the trace); each engine stops at
// the solution bound, an optional cap, or when no candidate remains.

#ifndef SUBMAX_OPTIMIZE_HPP_
#define SUBMAX_OPTIMIZE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "submax/constraints.hpp"
#include "submax/core.hpp"
#include "submax/rng.hpp"
#include "submax/sampling.hpp"

namespace submax {

struct IterationRecord {
  int element = -1;      // picked element
  double gain = 0.0;     // marginal used by the pick (sampled engines: F-hat)
  std::size_t support_size = 0;  // positive-weight components queried
};

struct RunReport {
  SolutionSet solution;
  double value = 0.0;  // true F of the solution, never F-hat
  CallCounts counts;   // calls made by this run
  std::vector<IterationRecord> trace;
  bool exhausted_candidates = false;  // stopped on A_j = empty
  std::vector<std::string> warnings;
};

namespace detail {

inline void check_engine_inputs(const DecomposableObjective& objective,
                                const ConstraintSystem& system) {
  if (objective.ground_size() != system.ground_size()) {
    throw InputError("engine: objective and constraint ground sets differ");
  }
}

inline int iteration_limit(const ConstraintSystem& system,
                           std::optional<int> k_cap) {
  int limit = system.solution_bound();
  if (k_cap) {
    if (*k_cap < 1) throw InputError("engine: k_cap must be positive");
    limit = std::min(limit, *k_cap);
  }
  return limit;
}

// Argmax of the marginal over candidates (ascending); strict improvement
// keeps the smallest index on ties.
struct BestPick {
  int element = -1;
  double gain = -std::numeric_limits<double>::infinity();
};

inline BestPick argmax_marginal(const DecomposableObjective& objective,
                                const std::vector<int>& base,
                                double cached_value,
                                const std::vector<int>& candidates,
                                CallCounter& counter) {
  BestPick best;
  std::vector<int> scratch(base);
  scratch.push_back(0);
  for (int e : candidates) {
    scratch.back() = e;
    const double gain =
        objective.value(scratch, counter, Phase::kExecution) - cached_value;
    if (gain > best.gain) {
      best.gain = gain;
      best.element = e;
    }
  }
  return best;
}

// Uniform subsample without replacement of ceil((n/k) ln(1/eps)) candidates,
// returned ascending so index tie-breaking matches the exact engines.
inline std::vector<int> stochastic_candidates(const std::vector<int>& pool,
                                              int n, int k, double eps,
                                              StreamRng& rng) {
  const double raw = (static_cast<double>(n) / k) * std::log(1.0 / eps);
  std::size_t size = static_cast<std::size_t>(std::ceil(raw));
  size = std::min(size, pool.size());
  std::vector<int> picked;
  picked.reserve(size);
  for (int idx : rng.sample_indices(static_cast<int>(pool.size()),
                                    static_cast<int>(size))) {
    picked.push_back(pool[static_cast<std::size_t>(idx)]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace detail

// Exact greedy: each iteration maximizes the true marginal over the
// constraint's candidate set. F(S_j) is carried forward from the picked
// marginal, so iteration j costs |support| * |A_j| execution calls.
inline RunReport greedy(const DecomposableObjective& objective,
                        const ConstraintSystem& system, CallCounter& counter,
                        std::optional<int> k_cap = std::nullopt) {
  detail::check_engine_inputs(objective, system);
  const int limit = detail::iteration_limit(system, k_cap);
  const CallCounts before = counter.snapshot();

  RunReport report;
  double cached = 0.0;  // F(empty) = 0 by the normalization contract
  for (int j = 0; j < limit; ++j) {
    const std::vector<int> candidates = system.candidates(report.solution);
    if (candidates.empty()) {
      report.exhausted_candidates = true;
      break;
    }
    const auto best = detail::argmax_marginal(
        objective, report.solution.elements(), cached, candidates, counter);
    report.solution.add(best.element);
    cached += best.gain;
    report.trace.push_back(
        {best.element, best.gain, objective.support().size()});
  }
  report.value = cached;
  report.counts = counter.snapshot() - before;
  return report;
}

// Lazy greedy: a max heap of candidates keyed by stale marginals. By
// submodularity a refreshed key can only drop, so a fresh top maximizes the
// true marginal. Picks the same solution as greedy under the shared
// tie-breaking; never uses more calls.
inline RunReport lazy_greedy(const DecomposableObjective& objective,
                             const ConstraintSystem& system,
                             CallCounter& counter,
                             std::optional<int> k_cap = std::nullopt) {
  detail::check_engine_inputs(objective, system);
  const int limit = detail::iteration_limit(system, k_cap);
  const CallCounts before = counter.snapshot();

  struct Entry {
    double key;
    int element;
    int stamp;  // iteration the key was computed at
  };
  // Max-heap by key; equal keys put the smaller element first.
  const auto worse = [](const Entry& a, const Entry& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.element > b.element;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  RunReport report;
  double cached = 0.0;
  std::vector<int> scratch;
  std::vector<char> valid(static_cast<std::size_t>(objective.ground_size()), 0);

  for (int j = 0; j < limit; ++j) {
    const std::vector<int> candidates = system.candidates(report.solution);
    if (candidates.empty()) {
      report.exhausted_candidates = true;
      break;
    }
    std::fill(valid.begin(), valid.end(), 0);
    for (int e : candidates) valid[static_cast<std::size_t>(e)] = 1;

    if (j == 0) {
      scratch.assign(1, 0);
      for (int e : candidates) {
        scratch[0] = e;
        heap.push({objective.value(scratch, counter, Phase::kExecution), e, 0});
      }
    }

    std::optional<Entry> picked;
    scratch.assign(report.solution.elements().begin(),
                   report.solution.elements().end());
    scratch.push_back(0);
    while (!heap.empty()) {
      Entry top = heap.top();
      heap.pop();
      // Once an element stops being addable it never becomes addable again
      // (downward closure), so it is dropped for good.
      if (!valid[static_cast<std::size_t>(top.element)]) continue;
      if (top.stamp == j) {
        picked = top;
        break;
      }
      scratch.back() = top.element;
      top.key =
          objective.value(scratch, counter, Phase::kExecution) - cached;
      top.stamp = j;
      heap.push(top);
    }
    if (!picked) {
      report.exhausted_candidates = true;
      break;
    }
    report.solution.add(picked->element);
    cached += picked->key;
    report.trace.push_back(
        {picked->element, picked->key, objective.support().size()});
  }
  report.value = cached;
  report.counts = counter.snapshot() - before;
  return report;
}

// Stochastic greedy: maximizes over a fresh uniform subsample of the
// remaining elements each iteration. Cardinality constraints only.
inline RunReport stochastic_greedy(const DecomposableObjective& objective,
                                   const ConstraintSystem& system,
                                   double eps, StreamRng rng,
                                   CallCounter& counter,
                                   std::optional<int> k_cap = std::nullopt) {
  detail::check_engine_inputs(objective, system);
  const auto* cardinality = dynamic_cast<const CardinalityConstraint*>(&system);
  if (cardinality == nullptr) {
    throw UnsupportedConstraintError(
        "stochastic_greedy: cardinality constraints only");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InputError("stochastic_greedy: eps must be in (0, 1)");
  }
  const int limit = detail::iteration_limit(system, k_cap);
  const CallCounts before = counter.snapshot();

  RunReport report;
  double cached = 0.0;
  for (int j = 0; j < limit; ++j) {
    const std::vector<int> pool = system.candidates(report.solution);
    if (pool.empty()) {
      report.exhausted_candidates = true;
      break;
    }
    StreamRng iter_rng = rng.derive(static_cast<std::uint64_t>(j));
    const std::vector<int> candidates = detail::stochastic_candidates(
        pool, objective.ground_size(), cardinality->k(), eps, iter_rng);
    const auto best = detail::argmax_marginal(
        objective, report.solution.elements(), cached, candidates, counter);
    report.solution.add(best.element);
    cached += best.gain;
    report.trace.push_back(
        {best.element, best.gain, objective.support().size()});
  }
  report.value = cached;
  report.counts = counter.snapshot() - before;
  return report;
}

// Mini-batch greedy: a fresh sparsifier F-hat^j = Sample(alpha, {p_i}) per
// iteration; the pick maximizes the F-hat^j marginal over A_j, with
// F-hat^j(S_j) cached once per iteration. When stochastic_eps is set the
// candidate set is subsampled first (cardinality constraints only) and the
// F-hat marginals are evaluated on the reduced set. The reported value is
// the true F, evaluated once at the end.
inline RunReport minibatch_greedy(
    const DecomposableObjective& objective, const ConstraintSystem& system,
    const SamplingPlan& plan, StreamRng rng, CallCounter& counter,
    std::optional<int> k_cap = std::nullopt,
    std::optional<double> stochastic_eps = std::nullopt) {
  detail::check_engine_inputs(objective, system);
  if (static_cast<int>(plan.p.size()) != objective.component_count()) {
    throw InputError("minibatch_greedy: plan length must equal N");
  }
  const CardinalityConstraint* cardinality = nullptr;
  if (stochastic_eps) {
    cardinality = dynamic_cast<const CardinalityConstraint*>(&system);
    if (cardinality == nullptr) {
      throw UnsupportedConstraintError(
          "minibatch_greedy: candidate subsampling needs a cardinality "
          "constraint");
    }
    if (!(*stochastic_eps > 0.0 && *stochastic_eps < 1.0)) {
      throw InputError("minibatch_greedy: stochastic eps must be in (0, 1)");
    }
  }
  const int limit = detail::iteration_limit(system, k_cap);
  const CallCounts before = counter.snapshot();

  RunReport report;
  for (int j = 0; j < limit; ++j) {
    std::vector<int> candidates = system.candidates(report.solution);
    if (candidates.empty()) {
      report.exhausted_candidates = true;
      break;
    }
    StreamRng iter_rng = rng.derive(static_cast<std::uint64_t>(j));
    if (stochastic_eps) {
      candidates = detail::stochastic_candidates(
          candidates, objective.ground_size(), cardinality->k(),
          *stochastic_eps, iter_rng);
    }
    const std::vector<double> weights =
        sample_weights(plan.alpha, plan.p, iter_rng.derive(0));
    const DecomposableObjective sampled = objective.apply_sample(weights);

    int element;
    double gain = 0.0;
    if (sampled.support().empty()) {
      report.warnings.push_back("empty sampled support at iteration " +
                                std::to_string(j + 1) +
                                "; picked by tie-break order");
      element = candidates.front();
    } else {
      const double cached = sampled.value(report.solution.elements(), counter,
                                          Phase::kExecution);
      const auto best = detail::argmax_marginal(
          sampled, report.solution.elements(), cached, candidates, counter);
      element = best.element;
      gain = best.gain;
    }
    report.solution.add(element);
    report.trace.push_back({element, gain, sampled.support().size()});
  }
  report.value =
      objective.value(report.solution.elements(), counter, Phase::kExecution);
  report.counts = counter.snapshot() - before;
  return report;
}

enum class InnerEngine { kNaive, kLazy, kStochastic };

inline const char* inner_engine_name(InnerEngine e) {
  switch (e) {
    case InnerEngine::kNaive: return "naive";
    case InnerEngine::kLazy: return "lazy";
    case InnerEngine::kStochastic: return "stochastic";
  }
  return "?";
}

// Sparsifier-based optimization: one Sample call up front, then the chosen
// inner engine runs against F-hat. The reported value is the true F.
inline RunReport sparsifier_greedy(const DecomposableObjective& objective,
                                   const ConstraintSystem& system,
                                   const SamplingPlan& plan, InnerEngine inner,
                                   StreamRng rng, CallCounter& counter,
                                   std::optional<int> k_cap = std::nullopt,
                                   double stochastic_eps = 0.1) {
  detail::check_engine_inputs(objective, system);
  if (static_cast<int>(plan.p.size()) != objective.component_count()) {
    throw InputError("sparsifier_greedy: plan length must equal N");
  }
  const CallCounts before = counter.snapshot();
  const std::vector<double> weights =
      sample_weights(plan.alpha, plan.p, rng.derive(0));
  const DecomposableObjective sampled = objective.apply_sample(weights);

  RunReport report;
  switch (inner) {
    case InnerEngine::kNaive:
      report = greedy(sampled, system, counter, k_cap);
      break;
    case InnerEngine::kLazy:
      report = lazy_greedy(sampled, system, counter, k_cap);
      break;
    case InnerEngine::kStochastic:
      report = stochastic_greedy(sampled, system, stochastic_eps,
                                 rng.derive(1), counter, k_cap);
      break;
  }
  if (sampled.support().empty()) {
    report.warnings.push_back(
        "empty sampled support; inner engine saw F-hat = 0");
  }
  report.value =
      objective.value(report.solution.elements(), counter, Phase::kExecution);
  report.counts = counter.snapshot() - before;
  return report;
}

struct BruteForceResult {
  SolutionSet solution;
  double value = 0.0;
};

// Exhaustive maximum over independent sets (lexicographically smallest
// maximizer among ties). Refused above n = 20.
inline BruteForceResult brute_force_opt(const DecomposableObjective& objective,
                                        const ConstraintSystem& system,
                                        CallCounter& counter) {
  detail::check_engine_inputs(objective, system);
  const int n = objective.ground_size();
  if (n > 20) {
    throw InputError("brute_force_opt: refused for ground sets above 20");
  }
  const int limit = system.solution_bound();

  BruteForceResult best;
  best.value = 0.0;  // the empty set
  std::vector<int> current;
  // Preorder DFS over ascending extensions visits sets in lexicographic
  // order, so keeping the first strict maximum yields the lexicographically
  // smallest maximizer.
  auto dfs = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) >= limit) return;
    for (int e = start; e < n; ++e) {
      current.push_back(e);
      if (system.is_independent(current)) {
        const double v = objective.value(current, counter, Phase::kExecution);
        if (v > best.value) {
          best.value = v;
          best.solution = SolutionSet(current);
        }
        self(self, e + 1);
      }
      current.pop_back();
    }
  };
  dfs(dfs, 0);
  return best;
}

}  // namespace submax

#endif  // SUBMAX_OPTIMIZE_HPP_
