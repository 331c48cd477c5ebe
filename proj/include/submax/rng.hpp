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

#ifndef SUBMAX_RNG_HPP_
#define SUBMAX_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace submax {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer: a full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Deterministic splittable generator. Draws are keyed by (stream state,
// index), so a batch of Bernoulli variables can be drawn in any order, or in
// parallel, with identical results. derive() yields an independent child
// stream: engines key per-iteration batches as derive(j), the experiment grid
// keys cells as derive(cell).
//
// All conversions to doubles/ints are hand-rolled so results are identical
// across standard libraries and platforms.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t seed) : state_(mix64(seed + kGoldenGamma)) {}

  StreamRng derive(std::uint64_t key) const {
    return StreamRng(state_ + kGoldenGamma * (key + 1));
  }

  // Stateless keyed access.
  std::uint64_t bits_at(std::uint64_t index) const {
    return mix64(state_ + kGoldenGamma * index + 0x632be59bd9b4e019ULL);
  }
  double uniform_at(std::uint64_t index) const {
    return static_cast<double>(bits_at(index) >> 11) * 0x1.0p-53;
  }

  // Sequential draws.
  std::uint64_t next_bits() { return bits_at(cursor_++); }
  double next_uniform() {
    return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
  }

  // Bounded draw by 128-bit multiply; bias is negligible for bound << 2^64.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_bits()) * bound) >> 64);
  }

  double next_gaussian() {
    double u1 = next_uniform();
    const double u2 = next_uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586 * u2);
  }

  // First m entries of a uniform random permutation of {0..n-1}
  // (partial Fisher-Yates).
  std::vector<int> sample_indices(int n, int m) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    const int take = m < n ? m : n;
    for (int i = 0; i < take; ++i) {
      const int j =
          i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[static_cast<std::size_t>(i)],
                idx[static_cast<std::size_t>(j)]);
    }
    idx.resize(static_cast<std::size_t>(take));
    return idx;
  }

 private:
  std::uint64_t state_;
  std::uint64_t cursor_ = 0;
};

}  // namespace submax

#endif  // SUBMAX_RNG_HPP_
