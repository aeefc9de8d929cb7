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

#ifndef TRAJLDP_MECHANISMS_H_
#define TRAJLDP_MECHANISMS_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "trajldp/geo.h"
#include "trajldp/random.h"

namespace trajldp {

// k-ary randomized response: report the true index with probability
// e^eps / (g - 1 + e^eps), any fixed other index with 1 / (g - 1 + e^eps).
// eps = 0 degenerates to the uniform distribution.
inline int krr_sample(int true_index, int domain_size, double epsilon,
                      RandomSource& rng) {
  if (domain_size < 2) {
    throw std::invalid_argument("krr_sample: domain size must be >= 2");
  }
  if (true_index < 0 || true_index >= domain_size) {
    throw std::invalid_argument("krr_sample: true index outside domain");
  }
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("krr_sample: epsilon must be non-negative");
  }
  // 1 / (1 + (g - 1) e^-eps) equals the printed form and stays finite for
  // large eps, where exp(eps) alone would overflow to inf/inf.
  const double p_true = 1.0 / (1.0 + (domain_size - 1) * std::exp(-epsilon));
  if (rng.uniform() < p_true) return true_index;
  const int other = static_cast<int>(rng.uniform_int(domain_size - 1));
  return other < true_index ? other : other + 1;
}

// Exponential-mechanism distribution over candidates with utility
// u(r) = -haversine(true, r), P(r) proportional to exp(eps * u / (2 * du)).
// Computed in log space with a max shift so large eps/du ratios stay finite.
// The true point need not be a candidate; sensitivity_km is caller-supplied
// (the maximum pairwise distance of the candidate domain bounds the utility
// spread for any true point, by the triangle inequality).
inline std::vector<double> em_distribution(PointId true_point_id,
                                           const std::vector<PointId>& candidate_ids,
                                           const PointSet& ps,
                                           double sensitivity_km, double epsilon) {
  if (candidate_ids.empty()) {
    throw std::invalid_argument("em_distribution: empty candidate list");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("em_distribution: epsilon must be positive");
  }
  const std::size_t n = candidate_ids.size();
  if (!(sensitivity_km > 0.0)) {
    const GeoPoint& first = ps.point(candidate_ids[0]);
    for (PointId id : candidate_ids) {
      if (!(ps.point(id) == first)) {
        throw std::invalid_argument(
            "em_distribution: zero sensitivity with distinct candidates");
      }
    }
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
  }
  std::vector<double> logw(n);
  double max_logw = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    logw[i] = epsilon * -ps.distance(true_point_id, candidate_ids[i]) /
              (2.0 * sensitivity_km);
    max_logw = std::max(max_logw, logw[i]);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    logw[i] = std::exp(logw[i] - max_logw);
    total += logw[i];
  }
  for (double& w : logw) w /= total;
  return logw;
}

inline PointId em_sample(PointId true_point_id,
                         const std::vector<PointId>& candidate_ids,
                         const PointSet& ps, double sensitivity_km,
                         double epsilon, RandomSource& rng) {
  const std::vector<double> probs =
      em_distribution(true_point_id, candidate_ids, ps, sensitivity_km, epsilon);
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return candidate_ids[i];
  }
  return candidate_ids.back();  // guards rounding of the final partial sum
}

// Square-wave band half-width. expm1 keeps the small-eps limit (1/2) stable
// against the cancellation in the printed closed form; past eps = 30 the
// numerator and denominator are rescaled by e^-eps so neither overflows (the
// width then decays toward 0 as eps / e^eps).
inline double sw_b(double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("sw_b: epsilon must be positive");
  }
  if (epsilon > 30.0) {
    return (epsilon - 1.0 + std::exp(-epsilon)) /
           (2.0 * (std::expm1(epsilon) - epsilon));
  }
  const double num = epsilon * std::exp(epsilon) - std::expm1(epsilon);
  const double den = 2.0 * std::exp(epsilon) * (std::expm1(epsilon) - epsilon);
  return num / den;
}

struct SwParams {
  double epsilon;
  double b;

  explicit SwParams(double eps) : epsilon(eps), b(sw_b(eps)) {}
};

// Probability that a square-wave draw lands inside the band [x-b, x+b].
// t = 2b e^eps is computed from the closed form of b so that no intermediate
// overflows; it tends to eps - 1 for large eps.
inline double sw_band_mass(double epsilon) {
  double t;
  if (epsilon > 30.0) {
    t = (epsilon - 1.0 + std::exp(-epsilon)) /
        (1.0 - (1.0 + epsilon) * std::exp(-epsilon));
  } else {
    t = 2.0 * sw_b(epsilon) * std::exp(epsilon);
  }
  return t / (t + 1.0);
}

// Square-wave mechanism on the unit interval: output in [-b, 1+b], uniform on
// the band around x with the boosted mass, else uniform on the complement.
// The complement has total length 1, and shifting [0,x) down by b and [x,1)
// up by b maps the unit interval onto it exactly.
inline double sw_sample(double x, double epsilon, RandomSource& rng) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("sw_sample: input outside [0, 1]");
  }
  const double b = sw_b(epsilon);
  const double band_mass = sw_band_mass(epsilon);
  if (rng.uniform() < band_mass) {
    return x - b + 2.0 * b * rng.uniform();
  }
  const double v = rng.uniform();
  return v < x ? v - b : v + b;
}

}  // namespace trajldp

#endif  // TRAJLDP_MECHANISMS_H_
