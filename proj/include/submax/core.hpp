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

// Ground sets, decomposable objectives F = sum_i w_i f^i, the component
// evaluation-oracle contract, and exact oracle-call accounting. One oracle
// call = one evaluation f^i(S) of a single component on a single set;
// components with weight zero are never queried.

#ifndef SUBMAX_CORE_HPP_
#define SUBMAX_CORE_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace submax {

// Error taxonomy shared across the library. The CLI maps these onto exit
// codes (config error = 1, validation failure = 2, I/O error = 3).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateObjectiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Phase { kPreprocessing, kExecution };

struct CallCounts {
  std::uint64_t preprocessing = 0;
  std::uint64_t execution = 0;

  std::uint64_t total() const { return preprocessing + execution; }
  friend CallCounts operator-(const CallCounts& a, const CallCounts& b) {
    return {a.preprocessing - b.preprocessing, a.execution - b.execution};
  }
  friend bool operator==(const CallCounts& a, const CallCounts& b) {
    return a.preprocessing == b.preprocessing && a.execution == b.execution;
  }
};

// Counts component evaluations, split into preprocessing vs execution.
// Accepts concurrent increments; counters never decrease.
class CallCounter {
 public:
  CallCounter() = default;
  CallCounter(const CallCounter&) = delete;
  CallCounter& operator=(const CallCounter&) = delete;

  void record(Phase phase, std::uint64_t calls = 1) {
    auto& slot =
        phase == Phase::kPreprocessing ? preprocessing_ : execution_;
    slot.fetch_add(calls, std::memory_order_relaxed);
  }
  CallCounts snapshot() const {
    return {preprocessing_.load(std::memory_order_relaxed),
            execution_.load(std::memory_order_relaxed)};
  }

 private:
  std::atomic<std::uint64_t> preprocessing_{0};
  std::atomic<std::uint64_t> execution_{0};
};

// Elements are referenced by index 0..n-1; labels are optional display names.
class GroundSet {
 public:
  explicit GroundSet(int n) : n_(n) {
    if (n < 1) throw InputError("GroundSet: size must be at least 1");
  }
  GroundSet(int n, std::vector<std::string> labels)
      : n_(n), labels_(std::move(labels)) {
    if (n < 1) throw InputError("GroundSet: size must be at least 1");
    if (static_cast<int>(labels_.size()) != n) {
      throw InputError("GroundSet: labels must have length n");
    }
    std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
    if (static_cast<int>(seen.size()) != n) {
      throw InputError("GroundSet: labels must be unique");
    }
  }

  int size() const { return n_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Label if present, else the decimal index.
  std::string label(int e) const {
    return labels_.empty() ? std::to_string(e)
                           : labels_[static_cast<std::size_t>(e)];
  }

 private:
  int n_;
  std::vector<std::string> labels_;
};

// A subset of the ground set that preserves insertion order; for greedy
// solutions the order equals the pick order.
class SolutionSet {
 public:
  SolutionSet() = default;
  explicit SolutionSet(std::vector<int> elements) {
    for (int e : elements) add(e);
  }

  void add(int e) {
    if (contains(e)) throw InputError("SolutionSet: duplicate element");
    order_.push_back(e);
    members_.insert(e);
  }
  bool contains(int e) const { return members_.count(e) > 0; }
  int size() const { return static_cast<int>(order_.size()); }
  bool empty() const { return order_.empty(); }
  const std::vector<int>& elements() const { return order_; }

  friend bool operator==(const SolutionSet& a, const SolutionSet& b) {
    return a.order_ == b.order_;
  }

 private:
  std::vector<int> order_;
  std::unordered_set<int> members_;
};

// N indexed component oracles, usually sharing storage (a distance matrix,
// bit rows, ...). Implementations must be non-negative, return 0 on the empty
// set, and be safe for concurrent read-only evaluation.
class ComponentFamily {
 public:
  virtual ~ComponentFamily() = default;
  virtual int count() const = 0;
  // f^i(S). Indices in s are distinct and already validated against the
  // ground set.
  virtual double value(int component, std::span<const int> s) const = 0;
};

// F(S) = sum_i w_i f^i(S) over a fixed ground set. Weights are non-negative;
// they both scale components and carry sparsifier coefficients, so a sampled
// objective is just a reweighted view sharing the same family.
class DecomposableObjective {
 public:
  DecomposableObjective(GroundSet ground,
                        std::shared_ptr<const ComponentFamily> family)
      : DecomposableObjective(
            std::move(ground), std::move(family), {}) {}

  DecomposableObjective(GroundSet ground,
                        std::shared_ptr<const ComponentFamily> family,
                        std::vector<double> weights)
      : ground_(std::move(ground)),
        family_(std::move(family)),
        weights_(std::move(weights)) {
    if (!family_) throw InputError("objective: null component family");
    if (family_->count() < 1) {
      throw InputError("objective: at least one component required");
    }
    if (weights_.empty()) {
      weights_.assign(static_cast<std::size_t>(family_->count()), 1.0);
    }
    if (static_cast<int>(weights_.size()) != family_->count()) {
      throw InputError("objective: weights length must equal N");
    }
    for (double w : weights_) {
      if (!(w >= 0.0)) throw InputError("objective: negative weight");
    }
    rebuild_support();
  }

  int ground_size() const { return ground_.size(); }
  int component_count() const { return family_->count(); }
  const GroundSet& ground() const { return ground_; }
  const ComponentFamily& family() const { return *family_; }
  const std::vector<double>& weights() const { return weights_; }
  // Indices of components with positive weight, ascending.
  const std::vector<int>& support() const { return support_; }

  // F(S). Charges one call per positive-weight component; the sum runs in
  // ascending component order so results are reproducible.
  double value(std::span<const int> s, CallCounter& counter,
               Phase phase) const {
    check_set(s);
    double total = 0.0;
    for (int i : support_) {
      total += weights_[static_cast<std::size_t>(i)] * family_->value(i, s);
    }
    counter.record(phase, support_.size());
    return total;
  }

  // F_S(e) = F(S + e) - F(S). With a cached F(S) only F(S + e) is evaluated.
  double marginal_gain(std::span<const int> s, int e,
                       std::optional<double> cached_value,
                       CallCounter& counter, Phase phase) const {
    check_element(e);
    if (std::find(s.begin(), s.end(), e) != s.end()) {
      throw InputError("marginal_gain: element already in the set");
    }
    const double base =
        cached_value ? *cached_value : value(s, counter, phase);
    std::vector<int> extended(s.begin(), s.end());
    extended.push_back(e);
    return value(extended, counter, phase) - base;
  }

  // w_i f^i(S), counted as one call. Zero-weight components are not queried.
  double component_value(int i, std::span<const int> s, CallCounter& counter,
                         Phase phase) const {
    if (i < 0 || i >= component_count()) {
      throw InputError("component_value: component index out of range");
    }
    const double w = weights_[static_cast<std::size_t>(i)];
    if (w == 0.0) return 0.0;
    check_set(s);
    counter.record(phase, 1);
    return w * family_->value(i, s);
  }

  DecomposableObjective with_weights(std::vector<double> weights) const {
    return DecomposableObjective(ground_, family_, std::move(weights));
  }

  // Hadamard product of the current weights with a sampled coefficient
  // vector, i.e. the sparsifier F-hat over the same family.
  DecomposableObjective apply_sample(std::span<const double> sample) const {
    if (static_cast<int>(sample.size()) != component_count()) {
      throw InputError("apply_sample: coefficient length must equal N");
    }
    std::vector<double> w(weights_);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= sample[i];
    return with_weights(std::move(w));
  }

  DecomposableObjective scaled(double factor) const {
    if (!(factor > 0.0)) throw InputError("scaled: factor must be positive");
    std::vector<double> w(weights_);
    for (double& x : w) x *= factor;
    return with_weights(std::move(w));
  }

 private:
  void check_element(int e) const {
    if (e < 0 || e >= ground_.size()) {
      throw InputError("objective: element index out of range");
    }
  }
  void check_set(std::span<const int> s) const {
    for (int e : s) check_element(e);
  }
  void rebuild_support() {
    support_.clear();
    for (int i = 0; i < static_cast<int>(weights_.size()); ++i) {
      if (weights_[static_cast<std::size_t>(i)] > 0.0) support_.push_back(i);
    }
  }

  GroundSet ground_;
  std::shared_ptr<const ComponentFamily> family_;
  std::vector<double> weights_;
  std::vector<int> support_;
};

}  // namespace submax

#endif  // SUBMAX_CORE_HPP_
