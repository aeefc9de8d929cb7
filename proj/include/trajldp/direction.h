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

#ifndef TRAJLDP_DIRECTION_H_
#define TRAJLDP_DIRECTION_H_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "trajldp/geo.h"

namespace trajldp {

// Discrete direction frame: g equal sectors around origin, indexed so that
// the reference bearing psi is the center of sector 0. Sector d covers
// bearings [psi + (2d-1)pi/g, psi + (2d+1)pi/g] modulo 2pi.
struct SectorFrame {
  GeoPoint origin;
  double psi = 0.0;  // radians, clockwise from north
  int g = 2;
};

// Sector containing p as seen from the frame origin. Points exactly on a
// sector boundary go to the lower-index sector of the two sharing it.
inline int sector_index(const SectorFrame& frame, const GeoPoint& p) {
  const double delta = ang_diff(initial_bearing(frame.origin, p), frame.psi);
  const double width = 2.0 * kPi / frame.g;
  const long k = std::lround(delta / width);
  const double off = delta - static_cast<double>(k) * width;
  const auto wrap = [g = frame.g](long v) {
    return static_cast<int>(((v % g) + g) % g);
  };
  int d = wrap(k);
  if (off == width / 2.0) {
    d = std::min(d, wrap(k + 1));
  } else if (off == -width / 2.0) {
    d = std::min(d, wrap(k - 1));
  }
  return d;
}

// Domain members lying in sector d_hat. A member coincident with the origin
// has no bearing and is skipped.
inline std::vector<PointId> get_point_set(const SectorFrame& frame, int d_hat,
                                          const std::vector<PointId>& domain,
                                          const PointSet& ps) {
  if (d_hat < 0 || d_hat >= frame.g) {
    throw std::invalid_argument("get_point_set: sector index outside frame");
  }
  std::vector<PointId> out;
  for (PointId id : domain) {
    const GeoPoint& p = ps.point(id);
    if (p == frame.origin) continue;
    if (sector_index(frame, p) == d_hat) out.push_back(id);
  }
  return out;
}

namespace detail {

// Length of the intersection of two circular arcs: a sector of half-width
// half_w centered at c, and the query arc [-theta, theta] centered at 0.
// Summing the three unwrapped copies is exact while each arc spans < 2pi.
inline double circular_overlap(double c, double half_w, double theta) {
  double total = 0.0;
  for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
    const double lo = std::max(c + shift - half_w, -theta);
    const double hi = std::min(c + shift + half_w, theta);
    total += std::max(0.0, hi - lo);
  }
  return total;
}

}  // namespace detail

// Fraction of sector d (granularity g, true direction centered at sector 0)
// covered by the query arc of half-width theta.
inline double sector_query_overlap(int d, int g, double theta) {
  if (g < 2 || d < 0 || d >= g) {
    throw std::invalid_argument("sector_query_overlap: bad sector");
  }
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::invalid_argument("sector_query_overlap: theta outside [0, pi]");
  }
  double center = 2.0 * kPi * d / g;
  if (center > kPi) center -= 2.0 * kPi;
  return detail::circular_overlap(center, kPi / g, theta) / (2.0 * kPi / g);
}

// Expected probability that a range query of half-width theta drawn from
// query_ranges still finds the (randomized-response-perturbed) direction:
// the sector-overlap fractions weighted by the k-RR output distribution,
// averaged over the query grid.
inline double direction_success_probability(int g, double epsilon_k,
                                            const std::vector<double>& query_ranges) {
  if (g < 2) {
    throw std::invalid_argument("direction_success_probability: g must be >= 2");
  }
  if (!(epsilon_k > 0.0)) {
    throw std::invalid_argument("direction_success_probability: epsilon_k must be positive");
  }
  if (query_ranges.empty()) {
    throw std::invalid_argument("direction_success_probability: empty query grid");
  }
  // Stable equivalents of e^eps / (g - 1 + e^eps) and 1 / (g - 1 + e^eps):
  // exp(eps_k) alone overflows for large budgets.
  const double em = std::exp(-epsilon_k);
  const double p_true = 1.0 / (1.0 + (g - 1) * em);
  const double p_other = em / (1.0 + (g - 1) * em);
  double total = 0.0;
  for (double theta : query_ranges) {
    for (int d = 0; d < g; ++d) {
      total += sector_query_overlap(d, g, theta) * (d == 0 ? p_true : p_other);
    }
  }
  return total / static_cast<double>(query_ranges.size());
}

struct GranularityConfig {
  std::vector<int> candidates = {2, 4, 6, 12};
  // Query half-widths; by default pi/g per candidate, mirroring how callers
  // probe a direction at each granularity they might use.
  std::vector<double> query_ranges;
  double epsilon_k = 1.0;
  // Success probabilities within this distance of the maximum count as tied;
  // ties resolve to the smallest granularity. Distinct candidates can sit
  // within floating noise of each other at small epsilon_k, where the coarser
  // frame is the safer choice.
  double tie_tolerance = 5e-3;

  std::vector<double> effective_query_ranges() const {
    if (!query_ranges.empty()) return query_ranges;
    std::vector<double> out;
    out.reserve(candidates.size());
    for (int g : candidates) out.push_back(kPi / g);
    return out;
  }
};

// Candidate granularity with the (near-tie adjusted) maximal success
// probability.
inline int select_granularity(const GranularityConfig& config) {
  if (config.candidates.empty()) {
    throw std::invalid_argument("select_granularity: no candidates");
  }
  const std::vector<double> ranges = config.effective_query_ranges();
  std::vector<int> order = config.candidates;
  std::sort(order.begin(), order.end());
  double best_score = -1.0;
  std::vector<double> scores;
  scores.reserve(order.size());
  for (int g : order) {
    const double s = direction_success_probability(g, config.epsilon_k, ranges);
    scores.push_back(s);
    best_score = std::max(best_score, s);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (best_score - scores[i] <= config.tie_tolerance) return order[i];
  }
  return order.back();  // unreachable: the max always qualifies
}

}  // namespace trajldp

#endif  // TRAJLDP_DIRECTION_H_
