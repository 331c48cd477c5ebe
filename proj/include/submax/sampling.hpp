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

// Per-component sampling probabilities p_i, the Sample procedure producing
// sparsifier coefficients w (E[w_i] = 1), and conversions between the
// experimental budget beta and the batch parameter alpha.

#ifndef SUBMAX_SAMPLING_HPP_
#define SUBMAX_SAMPLING_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "submax/core.hpp"
#include "submax/rng.hpp"

namespace submax {

enum class Scheme { kWeighted, kUniform };

inline const char* scheme_name(Scheme s) {
  return s == Scheme::kWeighted ? "weighted" : "uniform";
}

struct SamplingPlan {
  Scheme scheme = Scheme::kWeighted;
  std::vector<double> p;  // length N, entries in [0,1]
  double alpha = 1.0;
};

// p_i = max over e with F(e) != 0 of w_i f^i(e) / F(e). Costs |support| * n
// singleton evaluations, charged to preprocessing; F(e) is formed by
// summation over the same pass.
inline std::vector<double> weighted_probabilities(
    const DecomposableObjective& objective, CallCounter& counter) {
  const int n = objective.ground_size();
  const int count = objective.component_count();
  std::vector<double> p(static_cast<std::size_t>(count), 0.0);
  std::vector<double> column(static_cast<std::size_t>(count), 0.0);
  int single[1];
  bool any_nonzero = false;
  for (int e = 0; e < n; ++e) {
    single[0] = e;
    double f_e = 0.0;
    for (int i : objective.support()) {
      const double v =
          objective.component_value(i, single, counter, Phase::kPreprocessing);
      column[static_cast<std::size_t>(i)] = v;
      f_e += v;
    }
    if (f_e == 0.0) continue;  // element contributes no ratio
    any_nonzero = true;
    for (int i : objective.support()) {
      p[static_cast<std::size_t>(i)] = std::max(
          p[static_cast<std::size_t>(i)],
          column[static_cast<std::size_t>(i)] / f_e);
    }
  }
  if (!any_nonzero) {
    throw DegenerateObjectiveError(
        "weighted_probabilities: F(e) = 0 for every element");
  }
  return p;
}

// Uniform scheme: p_i = 1/N, no oracle calls.
inline std::vector<double> uniform_probabilities(int component_count) {
  if (component_count < 1) {
    throw InputError("uniform_probabilities: N must be >= 1");
  }
  return std::vector<double>(static_cast<std::size_t>(component_count),
                             1.0 / component_count);
}

// alpha such that alpha * sum_i p_i = beta * N; beta is the fraction of the
// N components targeted per sample.
inline double alpha_from_beta(double beta, std::span<const double> p,
                              int component_count) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw InputError("alpha_from_beta: beta must be in (0, 1]");
  }
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(sum > 0.0)) {
    throw InputError("alpha_from_beta: probabilities sum to zero");
  }
  return beta * component_count / sum;
}

// alpha = C * ln(n) / (eps^2 (1 - c)) for curvature-bounded objectives.
inline double alpha_for_bounded_curvature(double curvature, int n, double eps,
                                          double constant = 3.0) {
  if (!(curvature >= 0.0 && curvature < 1.0)) {
    throw InputError("alpha_for_bounded_curvature: c must be in [0, 1)");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InputError("alpha_for_bounded_curvature: eps must be in (0, 1)");
  }
  if (n < 2) throw InputError("alpha_for_bounded_curvature: n must be >= 2");
  return constant * std::log(static_cast<double>(n)) /
         (eps * eps * (1.0 - curvature));
}

// alpha = C * gamma * ln(n) / eps^2 for an additive (eps/gamma)-approximate
// incremental oracle; gamma = k under a cardinality constraint and k*p
// under a p-system.
inline double alpha_for_additive_oracle(double gamma, int n, double eps,
                                        double constant = 3.0) {
  if (!(gamma > 0.0)) {
    throw InputError("alpha_for_additive_oracle: gamma must be positive");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InputError("alpha_for_additive_oracle: eps must be in (0, 1)");
  }
  if (n < 2) throw InputError("alpha_for_additive_oracle: n must be >= 2");
  return constant * gamma * std::log(static_cast<double>(n)) / (eps * eps);
}

// When only approximate probabilities p'_i > lambda * p_i are available,
// growing alpha by 1/lambda restores the concentration guarantee.
inline double alpha_for_approximate_probabilities(double alpha,
                                                  double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError(
        "alpha_for_approximate_probabilities: lambda must be in (0, 1]");
  }
  return alpha / lambda;
}

// Sample(alpha, {p_i}): independent per-component Bernoulli draws with
// a_i = min(1, alpha p_i); w_i = 1/a_i with probability a_i, else 0, so
// E[w_i] = 1. Draw i is keyed by (stream, i): order-independent and
// reproducible.
inline std::vector<double> sample_weights(double alpha,
                                          std::span<const double> p,
                                          const StreamRng& rng) {
  if (!(alpha > 0.0)) throw InputError("sample_weights: alpha must be positive");
  std::vector<double> w(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw InputError("sample_weights: probabilities must be in [0, 1]");
    }
    const double a = alpha * p[i];
    if (a <= 0.0) continue;
    if (a >= 1.0) {
      w[i] = 1.0;
    } else if (rng.uniform_at(i) < a) {
      w[i] = 1.0 / a;
    }
  }
  return w;
}

// Closed form for the expected sparsifier support: sum_i min(1, alpha p_i),
// which is at most alpha * sum_i p_i.
inline double expected_support(double alpha, std::span<const double> p) {
  double total = 0.0;
  for (double pi : p) total += std::min(1.0, alpha * pi);
  return total;
}

// Assembles a plan for a given scheme and budget beta. The weighted scheme
// pays the singleton preprocessing pass; uniform costs nothing.
inline SamplingPlan plan_from_beta(Scheme scheme,
                                   const DecomposableObjective& objective,
                                   double beta, CallCounter& counter) {
  SamplingPlan plan;
  plan.scheme = scheme;
  plan.p = scheme == Scheme::kWeighted
               ? weighted_probabilities(objective, counter)
               : uniform_probabilities(objective.component_count());
  plan.alpha = alpha_from_beta(beta, plan.p, objective.component_count());
  return plan;
}

}  // namespace submax

#endif  // SUBMAX_SAMPLING_HPP_
