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

// Validators and estimators: monotonicity/submodularity spot checks,
// curvature, empirical phi for the smoothed models, and statistical checks
// of the approximate-incremental-oracle properties.

#ifndef SUBMAX_ANALYSIS_HPP_
#define SUBMAX_ANALYSIS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "submax/core.hpp"
#include "submax/rng.hpp"
#include "submax/sampling.hpp"

namespace submax {

inline constexpr double kSubmodularityTolerance = 1e-9;

struct MonotoneSubmodularReport {
  int trials = 0;
  int monotonicity_violations = 0;
  int submodularity_violations = 0;
  double worst_monotonicity_gap = 0.0;   // max F(S) - F(T) over S subset T
  double worst_submodularity_gap = 0.0;  // max F_T(e) - F_S(e)

  bool ok() const {
    return monotonicity_violations == 0 && submodularity_violations == 0;
  }
};

// Samples random chains S subset T subset E and e outside T; reports any
// monotonicity or submodularity violation beyond the absolute tolerance.
inline MonotoneSubmodularReport check_monotone_submodular(
    const DecomposableObjective& objective, int trials, StreamRng rng) {
  if (trials < 1) {
    throw InputError("check_monotone_submodular: trials must be positive");
  }
  const int n = objective.ground_size();
  CallCounter scratch;
  MonotoneSubmodularReport report;
  report.trials = trials;

  for (int t = 0; t < trials; ++t) {
    StreamRng trial = rng.derive(static_cast<std::uint64_t>(t));
    const int e = static_cast<int>(trial.next_below(
        static_cast<std::uint64_t>(n)));
    std::vector<int> big;
    std::vector<int> small;
    for (int x = 0; x < n; ++x) {
      if (x == e) continue;
      if (trial.next_uniform() < 0.5) {
        big.push_back(x);
        if (trial.next_uniform() < 0.5) small.push_back(x);
      }
    }
    const double f_small =
        objective.value(small, scratch, Phase::kPreprocessing);
    const double f_big = objective.value(big, scratch, Phase::kPreprocessing);
    small.push_back(e);
    big.push_back(e);
    const double f_small_e =
        objective.value(small, scratch, Phase::kPreprocessing);
    const double f_big_e =
        objective.value(big, scratch, Phase::kPreprocessing);

    bool monotone_broken = false;
    if (f_small > f_big + kSubmodularityTolerance) {
      monotone_broken = true;
      report.worst_monotonicity_gap =
          std::max(report.worst_monotonicity_gap, f_small - f_big);
    }
    if (f_big_e < f_big - kSubmodularityTolerance) {
      monotone_broken = true;
      report.worst_monotonicity_gap =
          std::max(report.worst_monotonicity_gap, f_big - f_big_e);
    }
    if (monotone_broken) ++report.monotonicity_violations;

    const double gain_small = f_small_e - f_small;
    const double gain_big = f_big_e - f_big;
    if (gain_small < gain_big - kSubmodularityTolerance) {
      ++report.submodularity_violations;
      report.worst_submodularity_gap =
          std::max(report.worst_submodularity_gap, gain_big - gain_small);
    }
  }
  return report;
}

enum class CurvatureMode { kExactSmall, kSingletonLowerBound };

// c = 1 - min over (S, e not in S, F(e) > 0) of F_S(e) / F(e). kExactSmall
// enumerates every pair (n <= 15); kSingletonLowerBound restricts S to
// E - {e}, the greatest set, at O(n) set evaluations.
inline double curvature(const DecomposableObjective& objective,
                        CurvatureMode mode, CallCounter& counter) {
  const int n = objective.ground_size();
  double min_ratio = std::numeric_limits<double>::infinity();

  if (mode == CurvatureMode::kExactSmall) {
    if (n > 15) throw InputError("curvature: exact mode refused above n = 15");
    const std::uint32_t masks = 1u << n;
    std::vector<double> value_of(masks, 0.0);
    std::vector<int> set;
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
      set.clear();
      for (int e = 0; e < n; ++e) {
        if (mask & (1u << e)) set.push_back(e);
      }
      value_of[mask] = objective.value(set, counter, Phase::kPreprocessing);
    }
    for (int e = 0; e < n; ++e) {
      const double single = value_of[1u << e];
      if (!(single > 0.0)) continue;
      for (std::uint32_t mask = 0; mask < masks; ++mask) {
        if (mask & (1u << e)) continue;
        const double gain = value_of[mask | (1u << e)] - value_of[mask];
        min_ratio = std::min(min_ratio, gain / single);
      }
    }
  } else {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) all[static_cast<std::size_t>(e)] = e;
    const double full = objective.value(all, counter, Phase::kPreprocessing);
    std::vector<int> rest;
    int single[1];
    for (int e = 0; e < n; ++e) {
      single[0] = e;
      const double f_e =
          objective.value(single, counter, Phase::kPreprocessing);
      if (!(f_e > 0.0)) continue;
      rest.clear();
      for (int x = 0; x < n; ++x) {
        if (x != e) rest.push_back(x);
      }
      const double without =
          rest.empty() ? 0.0
                       : objective.value(rest, counter, Phase::kPreprocessing);
      min_ratio = std::min(min_ratio, (full - without) / f_e);
    }
  }

  if (!std::isfinite(min_ratio)) {
    throw DegenerateObjectiveError("curvature: F(e) = 0 for every element");
  }
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

// Empirical phi of a normalized objective: the per-element mean singleton
// value (1/N) sum_i w_i f^i(e), minimized over elements for model 1 (the
// assumption must hold for every e) and maximized for model 2 (it must hold
// for some e). Requires max singleton <= 1; run normalize_singletons first.
inline double empirical_phi(const DecomposableObjective& objective, int model,
                            CallCounter& counter) {
  if (model != 1 && model != 2) {
    throw InputError("empirical_phi: model must be 1 or 2");
  }
  const int n = objective.ground_size();
  const double count = static_cast<double>(objective.component_count());
  double max_singleton = 0.0;
  double min_mean = std::numeric_limits<double>::infinity();
  double max_mean = 0.0;
  int single[1];
  for (int e = 0; e < n; ++e) {
    single[0] = e;
    double column = 0.0;
    for (int i : objective.support()) {
      const double v =
          objective.component_value(i, single, counter, Phase::kPreprocessing);
      max_singleton = std::max(max_singleton, v);
      column += v;
    }
    const double mean = column / count;
    min_mean = std::min(min_mean, mean);
    max_mean = std::max(max_mean, mean);
  }
  if (max_singleton > 1.0 + kSubmodularityTolerance) {
    throw InputError(
        "empirical_phi: unnormalized objective; apply normalize_singletons "
        "first");
  }
  return model == 1 ? min_mean : max_mean;
}

enum class OracleMode { kMultiplicative, kAdditive };

struct OracleQualityReport {
  OracleMode mode = OracleMode::kMultiplicative;
  double eps = 0.0;
  double gamma = 1.0;
  int trials = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double violation_rate = 0.0;
  double worst_deviation = 0.0;
  // max over checked elements of the concentration bound
  // 2 exp(-eps^2 alpha mu / (3 F(e))), clipped at 1.
  double predicted_bound = 0.0;
};

// Repeatedly samples F-hat from the plan (keyed by trial) and measures how
// often the sampled marginal F-hat_S(e) deviates from F_S(e) by more than
// eps * F_S(e) (multiplicative) or (eps / gamma) * F(e) (additive).
// Elements with F(e) = 0 are skipped, matching the probability scheme.
inline OracleQualityReport check_incremental_oracle(
    const DecomposableObjective& objective, const SamplingPlan& plan,
    const SolutionSet& s, OracleMode mode, double eps, double gamma,
    int trials, StreamRng rng, std::vector<int> elements = {}) {
  if (trials < 100) {
    throw InputError("check_incremental_oracle: at least 100 trials required");
  }
  if (!(eps > 0.0)) throw InputError("check_incremental_oracle: eps > 0");
  if (!(gamma > 0.0)) throw InputError("check_incremental_oracle: gamma > 0");
  if (static_cast<int>(plan.p.size()) != objective.component_count()) {
    throw InputError("check_incremental_oracle: plan length must equal N");
  }
  const int n = objective.ground_size();
  if (elements.empty()) {
    for (int e = 0; e < n; ++e) {
      if (!s.contains(e)) elements.push_back(e);
    }
  }
  CallCounter scratch;

  // Exact references per element.
  struct Reference {
    int element;
    double threshold;
    double marginal;
  };
  std::vector<Reference> refs;
  const double base = objective.value(s.elements(), scratch, Phase::kExecution);
  OracleQualityReport report;
  report.mode = mode;
  report.eps = eps;
  report.gamma = gamma;
  report.trials = trials;
  int single[1];
  std::vector<int> extended(s.elements());
  extended.push_back(0);
  for (int e : elements) {
    if (s.contains(e)) throw InputError("check_incremental_oracle: e in S");
    single[0] = e;
    const double f_e = objective.value(single, scratch, Phase::kExecution);
    if (f_e == 0.0) continue;
    extended.back() = e;
    const double marginal =
        objective.value(extended, scratch, Phase::kExecution) - base;
    const double mu =
        mode == OracleMode::kMultiplicative ? marginal : f_e / gamma;
    const double threshold = eps * mu;
    const double bound =
        std::min(1.0, 2.0 * std::exp(-eps * eps * plan.alpha * mu /
                                     (3.0 * f_e)));
    report.predicted_bound = std::max(report.predicted_bound, bound);
    refs.push_back({e, threshold, marginal});
  }

  for (int t = 0; t < trials; ++t) {
    const std::vector<double> weights = sample_weights(
        plan.alpha, plan.p, rng.derive(static_cast<std::uint64_t>(t)));
    const DecomposableObjective sampled = objective.apply_sample(weights);
    const double sampled_base =
        sampled.value(s.elements(), scratch, Phase::kExecution);
    for (const Reference& ref : refs) {
      extended.back() = ref.element;
      const double sampled_marginal =
          sampled.value(extended, scratch, Phase::kExecution) - sampled_base;
      const double deviation = std::abs(sampled_marginal - ref.marginal);
      report.worst_deviation = std::max(report.worst_deviation, deviation);
      ++report.checks;
      if (deviation > ref.threshold) ++report.violations;
    }
  }
  report.violation_rate =
      report.checks == 0
          ? 0.0
          : static_cast<double>(report.violations) / report.checks;
  return report;
}

}  // namespace submax

#endif  // SUBMAX_ANALYSIS_HPP_
