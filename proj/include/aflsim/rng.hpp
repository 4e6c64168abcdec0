/*
 * Copyright (c) 2026, the aflsim authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AFLSIM_RNG_HPP
#define AFLSIM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace aflsim {

/// Deterministic counter-seeded generator (xoshiro256++ state, splitmix64
/// seeding). All simulator randomness flows through per-purpose streams
/// derived from a master seed, so results are bit-identical across runs
/// and across host thread counts. The distribution transforms are written
/// out explicitly instead of using <random> distributions, which are not
/// pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Derives an independent stream from a master seed and a path of
  /// integers (purpose tag, round, client id, ...). Streams with distinct
  /// paths are statistically independent for simulation purposes.
  static Rng derive(std::uint64_t master, std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller (one value per pair of uniforms).
  double normal();
  /// Gamma(shape, 1) via Marsaglia-Tsang, with the shape<1 boost.
  double gamma(double shape);
  /// Uniform integer on {0, ..., n-1}; n must be positive.
  std::uint64_t uniform_int(std::uint64_t n);

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// Uniform k-subset of {0, ..., n-1} by partial Fisher-Yates; result in
  /// draw order (not sorted).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  /// Uniform random permutation of {0, ..., n-1}.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::uint64_t state_[4];
};

/// Dirichlet(alpha * 1_k) draw on the k-simplex via normalized gamma draws.
std::vector<double> dirichlet_symmetric(double alpha, std::size_t k, Rng& rng);

}  // namespace aflsim

#endif  // AFLSIM_RNG_HPP
