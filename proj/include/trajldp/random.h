// Copyright 2026 The trajldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRAJLDP_RANDOM_H_
#define TRAJLDP_RANDOM_H_

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace trajldp {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a; std::hash is not specified to be stable, this is.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Deterministic random stream with hierarchical derivation: the same seed and
// the same label path always reproduce the same draw sequence, independent of
// platform and of what sibling streams consume. Not thread-safe; derive one
// child per concurrent unit of work instead of sharing.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed)
      : seed_(seed), engine_(detail::splitmix64(seed)) {}

  RandomSource child(std::string_view label) const {
    return RandomSource(detail::splitmix64(seed_ ^ detail::fnv1a(label)));
  }

  RandomSource child(std::uint64_t index) const {
    return RandomSource(detail::splitmix64(seed_ + 0x632be59bd9b4e019ULL * (index + 1)));
  }

  RandomSource child_from_double(double value) const {
    return child(std::bit_cast<std::uint64_t>(value));
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Rejection keeps the distribution exact.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace trajldp

#endif  // TRAJLDP_RANDOM_H_
