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

// Acceptance suite: one pass/fail line per criterion. Exits with the number
// of failed criteria. Usage:
//
//   acceptance [--cli PATH] [criterion numbers...]
//
// --cli points at the submax binary (used by the validation-suite
// criterion); without it that criterion runs library-side checks only.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "submax/submax.hpp"
#include "test_util.hpp"

using namespace submax;
using testing::frequency_stderr;
using testing::mean_std;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

constexpr double kOneMinusInvE = 0.6321205588285577;

// 1. Exact greedy achieves (1 - 1/e) * OPT on every random cardinality
// instance.
Outcome cardinality_guarantee(const std::string&) {
  StreamRng rng(101);
  int passed = 0;
  double worst_ratio = 1e300;
  const int instances = 200;
  for (int t = 0; t < instances; ++t) {
    const int n = 4 + static_cast<int>(rng.next_below(9));        // <= 12
    const int components = 5 + static_cast<int>(rng.next_below(46));  // <= 50
    const int k = 1 + static_cast<int>(rng.next_below(4));        // <= 4
    auto objective = testing::random_objective(rng, n, components);
    CardinalityConstraint constraint(k, n);
    CallCounter counter;
    const auto report = greedy(objective, constraint, counter);
    const auto opt = brute_force_opt(objective, constraint, counter);
    if (opt.value > 0.0) worst_ratio = std::min(worst_ratio, report.value / opt.value);
    if (report.value >= kOneMinusInvE * opt.value - 1e-9) ++passed;
  }
  return {passed == instances,
          std::to_string(passed) + "/" + std::to_string(instances) +
              " instances above (1-1/e)*OPT; worst ratio " + fmt(worst_ratio)};
}

// 2. Greedy achieves OPT/3 on every random matching (2-system) instance.
Outcome psystem_guarantee(const std::string&) {
  StreamRng rng(211);
  int passed = 0;
  double worst_ratio = 1e300;
  const int instances = 100;
  for (int t = 0; t < instances; ++t) {
    auto system = testing::random_matching_system(rng, 20);
    auto objective =
        testing::random_objective(rng, system.ground_size(), 12);
    CallCounter counter;
    const auto report = greedy(objective, system, counter);
    const auto opt = brute_force_opt(objective, system, counter);
    if (opt.value > 0.0) worst_ratio = std::min(worst_ratio, report.value / opt.value);
    if (report.value >= opt.value / 3.0 - 1e-9) ++passed;
  }
  return {passed == instances,
          std::to_string(passed) + "/" + std::to_string(instances) +
              " instances above OPT/3; worst ratio " + fmt(worst_ratio)};
}

// 3. Mini-batch greedy with the theoretical additive alpha (gamma = k,
// eps = 0.3) reaches (1 - 1/e - 0.3) * OPT in at least 95% of seeded runs.
Outcome minibatch_guarantee(const std::string&) {
  StreamRng rng(307);
  const double eps = 0.3;
  const double target_factor = kOneMinusInvE - eps;
  int successes = 0;
  const int runs = 200;
  for (int run = 0; run < runs; ++run) {
    const int n = 4 + static_cast<int>(rng.next_below(9));  // <= 12
    const int k = 1 + static_cast<int>(rng.next_below(4));
    auto objective = testing::random_coverage(rng, n, 200);
    CardinalityConstraint constraint(k, n);
    CallCounter counter;
    SamplingPlan plan;
    plan.scheme = Scheme::kWeighted;
    plan.p = weighted_probabilities(objective, counter);
    plan.alpha = alpha_for_additive_oracle(static_cast<double>(k), n, eps);
    const auto report = minibatch_greedy(objective, constraint, plan,
                                         StreamRng(9000 + run), counter);
    const auto opt = brute_force_opt(objective, constraint, counter);
    if (report.value >= target_factor * opt.value - 1e-9) ++successes;
  }
  return {successes >= 190,
          std::to_string(successes) + "/200 runs above (1-1/e-0.3)*OPT "
          "(threshold 190)"};
}

// 4. Mean sparsifier support over 10^4 draws matches sum_i min(1, alpha p_i)
// within 3 standard errors and never exceeds alpha * sum_i p_i.
Outcome support_size(const std::string&) {
  // A coverage instance with two rare elements: their few covering
  // components get large p_i, so the clamp alpha_i = min(1, alpha p_i)
  // genuinely binds and sum_i min(1, alpha p_i) sits strictly below
  // alpha * sum_i p_i.
  StreamRng rng(401);
  BipartiteDataset data;
  data.left_size = 500;
  data.right_size = 10;
  for (int u = 0; u < 490; ++u) {
    const int degree = 1 + static_cast<int>(rng.next_below(3));
    for (int d = 0; d < degree; ++d) {
      data.edges.emplace_back(u, static_cast<int>(rng.next_below(8)));
    }
  }
  for (int u = 490; u < 495; ++u) data.edges.emplace_back(u, 8);
  for (int u = 495; u < 500; ++u) data.edges.emplace_back(u, 9);
  auto objective = coverage_objective(data);
  CallCounter counter;
  const auto p = weighted_probabilities(objective, counter);
  const double alpha = alpha_from_beta(0.2, p, 500);
  const double closed_form = expected_support(alpha, p);
  const double alpha_sum =
      alpha * std::accumulate(p.begin(), p.end(), 0.0);
  if (!(closed_form < alpha_sum - 1.0)) {
    return {false, "instance did not clamp any component"};
  }

  const int draws = 10000;
  std::vector<double> sizes;
  sizes.reserve(draws);
  for (int t = 0; t < draws; ++t) {
    const auto w = sample_weights(alpha, p, StreamRng(40000 + t));
    int nonzero = 0;
    for (double wi : w) nonzero += wi > 0.0;
    sizes.push_back(nonzero);
  }
  const auto stats = mean_std(sizes);
  const bool matches =
      std::abs(stats.mean - closed_form) <= 3.0 * stats.stderr_of_mean;
  const bool bounded = stats.mean <= alpha_sum && closed_form <= alpha_sum;
  return {matches && bounded,
          "mean " + fmt(stats.mean) + " vs closed form " + fmt(closed_form) +
              " (3se " + fmt(3.0 * stats.stderr_of_mean) + "), bound " +
              fmt(alpha_sum)};
}

// 5. Concentration on a model-2 instance: for fixed S and e the violation
// frequency of |F-hat_S(e) - F_S(e)| >= eps * mu, mu = F(e)/gamma, stays
// below 2 exp(-eps^2 alpha mu / (3 F(e))) plus 3 standard errors.
Outcome concentration(const std::string&) {
  SmoothedInstanceSpec spec;
  spec.model = 2;
  spec.n = 20;
  spec.component_count = 10000;
  spec.phi = 0.3;
  spec.d = 10;
  spec.seed = 501;
  auto instance = generate_smoothed_instance(spec);
  CallCounter counter;
  SamplingPlan plan;
  plan.scheme = Scheme::kWeighted;
  plan.p = weighted_probabilities(instance.objective, counter);
  const double eps = 0.5;
  const double gamma = 4.0;
  plan.alpha = alpha_for_additive_oracle(gamma, spec.n, eps);

  SolutionSet s;
  s.add(instance.star_element);
  const int element = instance.star_element == 0 ? 1 : 0;

  // the concentration bound needs mu = F(e)/gamma >= F_S(e)
  CallCounter scratch;
  int single[1] = {element};
  const double f_e =
      instance.objective.value(single, scratch, Phase::kExecution);
  std::vector<int> extended(s.elements());
  extended.push_back(element);
  const double marginal =
      instance.objective.value(extended, scratch, Phase::kExecution) -
      instance.objective.value(s.elements(), scratch, Phase::kExecution);
  if (!(f_e / gamma >= marginal)) {
    return {false, "mu < F_S(e); test instance invalid"};
  }

  const int trials = 10000;
  const auto report = check_incremental_oracle(
      instance.objective, plan, s, OracleMode::kAdditive, eps, gamma, trials,
      StreamRng(777), {element});
  const double slack =
      3.0 * frequency_stderr(report.predicted_bound, trials);
  return {report.violation_rate <= report.predicted_bound + slack,
          "rate " + fmt(report.violation_rate) + " vs bound " +
              fmt(report.predicted_bound) + " + 3se " + fmt(slack)};
}

// 6. Degeneration identities, exact: clamped sampled engines equal their
// exact counterparts; lazy equals naive elementwise on 200 instances.
Outcome degeneration(const std::string&) {
  StreamRng rng(601);
  for (int t = 0; t < 50; ++t) {
    const int n = 4 + static_cast<int>(rng.next_below(6));
    auto objective = testing::random_objective(rng, n, 12);
    CardinalityConstraint constraint(
        1 + static_cast<int>(rng.next_below(4)), n);
    SamplingPlan plan;
    plan.scheme = Scheme::kUniform;
    plan.p = uniform_probabilities(objective.component_count());
    plan.alpha = objective.component_count();  // alpha p_i = 1 for all i
    CallCounter counter;
    const auto exact = greedy(objective, constraint, counter);
    const auto exact_lazy = lazy_greedy(objective, constraint, counter);
    const auto mb = minibatch_greedy(objective, constraint, plan,
                                     StreamRng(t), counter);
    const auto sp_naive =
        sparsifier_greedy(objective, constraint, plan, InnerEngine::kNaive,
                          StreamRng(t), counter);
    const auto sp_lazy =
        sparsifier_greedy(objective, constraint, plan, InnerEngine::kLazy,
                          StreamRng(t), counter);
    StreamRng stochastic_seed(500 + t);
    const auto st = stochastic_greedy(objective, constraint, 0.2,
                                      stochastic_seed.derive(1), counter);
    const auto sp_st = sparsifier_greedy(objective, constraint, plan,
                                         InnerEngine::kStochastic,
                                         stochastic_seed, counter,
                                         std::nullopt, 0.2);
    if (!(mb.solution == exact.solution) ||
        !(sp_naive.solution == exact.solution) ||
        !(sp_lazy.solution == exact_lazy.solution) ||
        !(exact_lazy.solution == exact.solution) ||
        !(sp_st.solution == st.solution)) {
      return {false, "clamped-engine mismatch on instance " +
                         std::to_string(t)};
    }
  }
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + static_cast<int>(rng.next_below(9));  // <= 12
    auto objective = testing::random_objective(rng, n, 10);
    CardinalityConstraint constraint(
        1 + static_cast<int>(rng.next_below(4)), n);
    CallCounter counter;
    if (!(greedy(objective, constraint, counter).solution ==
          lazy_greedy(objective, constraint, counter).solution)) {
      return {false, "lazy/naive mismatch on instance " + std::to_string(t)};
    }
  }
  return {true, "50 clamped-engine identities and 200 lazy/naive equalities, "
                "zero tolerance"};
}

// 7. Qualitative reproduction of the headline comparison on a model-2
// instance (n = 100, N = 10^5, phi = 0.3) at beta = 0.01 over 20
// repetitions: uniform mini-batch >= weighted sparsifier in mean relative
// utility, uniform mini-batch >= 0.9 of lazy-greedy, and the uniform scheme
// pays zero preprocessing calls.
Outcome qualitative_comparison(const std::string&) {
  SmoothedInstanceSpec spec;
  spec.model = 2;
  spec.n = 100;
  spec.component_count = 100000;
  spec.phi = 0.3;
  spec.d = 100;
  spec.seed = 701;
  // off-columns overlap the designated column's range so filler picks carry
  // real value and the utility comparison is not a tie by construction
  spec.off_mean = 0.15;
  auto instance = generate_smoothed_instance(spec);
  const auto& objective = instance.objective;
  const int count = objective.component_count();
  CardinalityConstraint constraint(5, spec.n);
  const double beta = 0.01;

  CallCounter baseline_counter;
  const auto baseline = lazy_greedy(objective, constraint, baseline_counter);

  CallCounter weighted_counter;
  const auto weighted_p = weighted_probabilities(objective, weighted_counter);
  const std::uint64_t weighted_prepro =
      weighted_counter.snapshot().preprocessing;

  SamplingPlan uniform_plan{Scheme::kUniform, uniform_probabilities(count),
                            0.0};
  uniform_plan.alpha = alpha_from_beta(beta, uniform_plan.p, count);
  SamplingPlan weighted_plan{Scheme::kWeighted, weighted_p, 0.0};
  weighted_plan.alpha = alpha_from_beta(beta, weighted_plan.p, count);

  std::vector<double> uniform_rel, weighted_rel;
  std::uint64_t uniform_prepro_calls = 0;
  for (int rep = 0; rep < 20; ++rep) {
    CallCounter mb_counter;
    const auto mb = minibatch_greedy(objective, constraint, uniform_plan,
                                     StreamRng(7100 + rep), mb_counter);
    uniform_rel.push_back(mb.value / baseline.value);
    uniform_prepro_calls += mb_counter.snapshot().preprocessing;

    CallCounter sp_counter;
    const auto sp = sparsifier_greedy(objective, constraint, weighted_plan,
                                      InnerEngine::kLazy,
                                      StreamRng(7300 + rep), sp_counter);
    weighted_rel.push_back(sp.value / baseline.value);
  }
  const auto u = mean_std(uniform_rel);
  const auto w = mean_std(weighted_rel);
  const double se_diff = std::sqrt(u.stderr_of_mean * u.stderr_of_mean +
                                   w.stderr_of_mean * w.stderr_of_mean);
  const bool uniform_beats_weighted = u.mean >= w.mean - 3.0 * se_diff;
  const bool near_lazy = u.mean >= 0.9 - 3.0 * u.stderr_of_mean;
  const bool no_prepro = uniform_prepro_calls == 0;
  (void)weighted_prepro;
  return {uniform_beats_weighted && near_lazy && no_prepro,
          "uniform mini-batch " + fmt(u.mean) + " vs weighted sparsifier " +
              fmt(w.mean) + " (3se " + fmt(3.0 * se_diff) +
              "); uniform preprocessing calls " +
              std::to_string(uniform_prepro_calls)};
}

// 8. Call accounting, exact: naive greedy execution calls <= N n k on every
// run; the weighted singleton pass records exactly N * n preprocessing
// calls.
Outcome call_accounting(const std::string&) {
  StreamRng rng(809);
  for (int t = 0; t < 30; ++t) {
    const int n = 4 + static_cast<int>(rng.next_below(8));
    const int components = 5 + static_cast<int>(rng.next_below(96));
    const int k = 1 + static_cast<int>(rng.next_below(5));
    auto objective = testing::random_objective(rng, n, components);
    CallCounter counter;
    greedy(objective, CardinalityConstraint(k, n), counter);
    const auto counts = counter.snapshot();
    if (counts.execution >
        static_cast<std::uint64_t>(components) * n * k) {
      return {false, "naive greedy exceeded N*n*k on instance " +
                         std::to_string(t)};
    }
    if (counts.preprocessing != 0) {
      return {false, "naive greedy charged preprocessing calls"};
    }
    CallCounter prepro;
    try {
      weighted_probabilities(objective, prepro);
    } catch (const DegenerateObjectiveError&) {
      continue;
    }
    if (prepro.snapshot().preprocessing !=
        static_cast<std::uint64_t>(components) * n) {
      return {false, "weighted preprocessing was not exactly N*n"};
    }
  }
  return {true, "30 runs: naive exec <= N*n*k and weighted preprocessing "
                "= N*n, exact"};
}

// 9. Validation suite: built-in objectives pass 10^3-trial checks with zero
// violations; the supermodular fixture fails, and through the CLI it exits
// with status 2.
Outcome validation_suite(const std::string& cli_path) {
  StreamRng rng(907);
  const std::vector<std::pair<std::string, DecomposableObjective>> builtins{
      {"coverage", builtin_dataset("coverage").objective},
      {"facility", builtin_dataset("facility").objective},
      {"modular", builtin_dataset("modular").objective}};
  for (const auto& [name, objective] : builtins) {
    const auto report = check_monotone_submodular(objective, 1000, rng);
    if (!report.ok()) {
      return {false, name + " failed the 1000-trial spot check"};
    }
  }
  SmoothedInstanceSpec spec;
  spec.model = 1;
  spec.n = 8;
  spec.component_count = 300;
  spec.phi = 0.4;
  spec.d = 3;
  spec.seed = 11;
  const auto smoothed = generate_smoothed_instance(spec);
  if (!check_monotone_submodular(smoothed.objective, 1000, rng).ok()) {
    return {false, "smoothed instance failed the spot check"};
  }
  const auto adversarial =
      check_monotone_submodular(supermodular_fixture_objective(4), 1000, rng);
  if (adversarial.submodularity_violations == 0) {
    return {false, "supermodular fixture was not caught"};
  }
  if (cli_path.empty()) {
    return {true, "library checks pass; CLI exit-status check skipped "
                  "(--cli not given)"};
  }
  const auto exit_code = [&cli_path](const std::string& args) {
    const int status =
        std::system((cli_path + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  if (exit_code("validate --builtin coverage") != 0) {
    return {false, "CLI validate coverage did not exit 0"};
  }
  if (exit_code("validate --builtin supermodular") != 2) {
    return {false, "CLI validate supermodular did not exit 2"};
  }
  return {true, "built-ins clean over 1000 trials; the supermodular fixture "
                "fails with exit status 2"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli_path = argv[++i];
    } else {
      selected.push_back(std::atoi(arg.c_str()));
    }
  }

  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome(const std::string&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "cardinality guarantee (1-1/e)*OPT", cardinality_guarantee},
      {2, "2-system guarantee OPT/3", psystem_guarantee},
      {3, "mini-batch additive-oracle guarantee", minibatch_guarantee},
      {4, "sparsifier support size", support_size},
      {5, "mini-batch concentration bound", concentration},
      {6, "degeneration identities", degeneration},
      {7, "uniform vs weighted qualitative comparison",
       qualitative_comparison},
      {8, "oracle-call accounting", call_accounting},
      {9, "validation suite", validation_suite},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.number) ==
            selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run(cli_path);
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %d. %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                criterion.number, criterion.name, outcome.detail.c_str(),
                seconds);
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  return failures;
}
