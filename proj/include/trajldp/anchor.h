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

#ifndef TRAJLDP_ANCHOR_H_
#define TRAJLDP_ANCHOR_H_

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trajldp/budget.h"
#include "trajldp/direction.h"
#include "trajldp/geo.h"
#include "trajldp/mechanisms.h"
#include "trajldp/pivot.h"
#include "trajldp/random.h"

namespace trajldp {

// Coordinate mean of the trajectory points and its nearest universe member
// (snapping keeps the anchor inside the shared domain). Ties go to the lowest
// id via PointSet::nearest.
inline std::pair<GeoPoint, PointId> compute_anchor(const Trajectory& traj,
                                                   const PointSet& ps) {
  validate_trajectory(traj, ps);
  double lat = 0.0, lon = 0.0;
  for (PointId id : traj.point_ids) {
    lat += ps.point(id).lat;
    lon += ps.point(id).lon;
  }
  const double n = static_cast<double>(traj.size());
  const GeoPoint anchor{lat / n, lon / n};
  return {anchor, ps.nearest(anchor)};
}

// The probe machinery behind radius calibration: equally spaced test values
// on the unit interval, the ones whose noise band covers the reported radius
// score, and the universe points whose own scores fall between those bounds.
struct CalibrationProbe {
  std::vector<double> matched_values;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<PointId> candidate_points;

  static std::vector<double> probe_values() {
    std::vector<double> v(11);
    for (int k = 0; k <= 10; ++k) v[k] = 0.1 * k;
    return v;
  }
};

struct RadiusPull {
  double beta = 0.0;
  double xi_km = 0.0;
  double r_hat_km = 0.0;
};

struct CalibrationResult {
  CalibrationProbe probe;
  double eta_km = 0.0;
  double beta = 0.0;
  double xi_km = 0.0;
  double r_hat_km = 0.0;
};

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace detail

// Pulls the noisy radius toward the calibration center eta. The gap is
// normalized to beta in [0, 1] (relative to eta below it, to the remaining
// headroom above it), squashed through a sigmoid so the step never reaches
// the full gap, and damped by e^-eps2 so calibration fades as the square-wave
// noise concentrates.
inline RadiusPull calibrate_from_center(double eta_km, double r_hat_max_km,
                                        double delta_r_km, double epsilon2) {
  const double gap = eta_km - r_hat_max_km;
  RadiusPull pull;
  if (gap == 0.0) {
    pull.r_hat_km = r_hat_max_km;
    return pull;
  }
  pull.beta = gap > 0.0 ? gap / eta_km : -gap / (delta_r_km - eta_km);
  pull.xi_km = gap * detail::sigmoid(pull.beta / 2.0);
  pull.r_hat_km = std::clamp(r_hat_max_km + pull.xi_km * std::exp(-epsilon2),
                             0.0, delta_r_km);
  return pull;
}

// Data-independent recentering of a square-wave-perturbed radius. Probe
// values whose band could have produced the reported score bound a distance
// band; points inside it get the band's probability mass as weight, points
// outside the complement, and the weighted mean distance becomes the center.
inline CalibrationResult calibrate_radius(double r_hat_max_km, double delta_r_km,
                                          PointId perturbed_anchor,
                                          const PointSet& ps, double epsilon2,
                                          double b) {
  if (!(delta_r_km > 0.0)) {
    throw std::invalid_argument("calibrate_radius: delta_r must be positive");
  }
  if (!(r_hat_max_km >= 0.0 && r_hat_max_km <= delta_r_km)) {
    throw std::invalid_argument("calibrate_radius: radius outside [0, delta_r]");
  }
  if (!(epsilon2 > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("calibrate_radius: bad noise parameters");
  }
  CalibrationResult result;
  CalibrationProbe& probe = result.probe;

  const double score = (2.0 * b + 1.0) * r_hat_max_km / delta_r_km - b;
  for (double v : CalibrationProbe::probe_values()) {
    if (std::abs(v - score) <= b) probe.matched_values.push_back(v);
  }
  if (probe.matched_values.empty()) {
    double best = 0.0;
    for (double v : CalibrationProbe::probe_values()) {
      if (std::abs(v - score) < std::abs(best - score)) best = v;
    }
    probe.matched_values.push_back(best);
  }
  probe.lower = probe.matched_values.front();
  probe.upper = probe.matched_values.back();

  double in_sum = 0.0, out_sum = 0.0;
  std::size_t out_count = 0;
  for (PointId id = 0; id < static_cast<PointId>(ps.size()); ++id) {
    const double d = ps.distance(perturbed_anchor, id);
    const double point_score = (2.0 * b + 1.0) * d / delta_r_km - b;
    if (point_score >= probe.lower && point_score <= probe.upper) {
      probe.candidate_points.push_back(id);
      in_sum += d;
    } else {
      out_sum += d;
      ++out_count;
    }
  }

  if (probe.candidate_points.empty()) {
    result.eta_km = r_hat_max_km;  // calibration becomes a no-op
  } else {
    const double w = sw_band_mass(epsilon2);
    const double num = w * in_sum + (1.0 - w) * out_sum;
    const double den = w * static_cast<double>(probe.candidate_points.size()) +
                       (1.0 - w) * static_cast<double>(out_count);
    result.eta_km = num / den;
  }
  const RadiusPull pull =
      calibrate_from_center(result.eta_km, r_hat_max_km, delta_r_km, epsilon2);
  result.beta = pull.beta;
  result.xi_km = pull.xi_km;
  result.r_hat_km = pull.r_hat_km;
  return result;
}

// The anchor, noisy radius, calibration summary, and the candidate domain the
// radius carves out of the universe.
struct AnchorRegion {
  GeoPoint anchor{0.0, 0.0};
  PointId anchor_point = -1;
  PointId perturbed_anchor = -1;
  double r_max_km = 0.0;
  double delta_r_km = 0.0;
  double r_hat_max_km = 0.0;
  double eta_km = 0.0;
  double xi_km = 0.0;
  double beta = 0.0;
  double r_hat_km = 0.0;
  std::vector<PointId> restricted_domain;
};

// Region restriction: perturb the snapped anchor with a quarter of the call
// budget, report the farthest-point radius through the square-wave mechanism
// with the rest, calibrate, and keep every universe point within the final
// radius of the perturbed anchor. With fixed_radius set, the radius is public
// knowledge: the whole call budget funds the anchor draw, nothing else is
// reported, and the true trajectory is never consulted.
inline AnchorRegion restrict_trajectory_region(
    const Trajectory& traj, const PointSet& ps, double epsilon_r,
    RandomSource& rng, BudgetLedger& ledger,
    std::optional<double> fixed_radius = {}) {
  validate_trajectory(traj, ps);
  if (!(epsilon_r > 0.0)) {
    throw std::invalid_argument("restrict_trajectory_region: epsilon_r must be positive");
  }
  if (fixed_radius && !(*fixed_radius >= 0.0)) {
    throw std::invalid_argument("restrict_trajectory_region: fixed radius must be >= 0");
  }
  AnchorRegion region;
  std::tie(region.anchor, region.anchor_point) = compute_anchor(traj, ps);
  const std::vector<PointId> full = all_point_ids(ps);

  const double anchor_eps = fixed_radius ? epsilon_r : 0.25 * epsilon_r;
  ledger.spend("rtr.anchor", anchor_eps);
  region.perturbed_anchor = em_sample(region.anchor_point, full, ps,
                                      ps.diameter_km(), anchor_eps, rng);
  for (PointId id : full) {
    region.delta_r_km =
        std::max(region.delta_r_km, ps.distance(region.perturbed_anchor, id));
  }

  if (fixed_radius) {
    region.r_hat_km = std::min(*fixed_radius, region.delta_r_km);
    region.r_hat_max_km = region.r_hat_km;
    region.eta_km = region.r_hat_km;
  } else {
    const double radius_eps = 0.75 * epsilon_r;
    ledger.spend("rtr.radius", radius_eps);
    if (region.delta_r_km > 0.0) {
      for (PointId id : traj.point_ids) {
        region.r_max_km =
            std::max(region.r_max_km, ps.distance(region.perturbed_anchor, id));
      }
      const double b = sw_b(radius_eps);
      const double noisy =
          sw_sample(region.r_max_km / region.delta_r_km, radius_eps, rng);
      region.r_hat_max_km = std::clamp(
          (noisy + b) * region.delta_r_km / (2.0 * b + 1.0), 0.0, region.delta_r_km);
      const CalibrationResult calib = calibrate_radius(
          region.r_hat_max_km, region.delta_r_km, region.perturbed_anchor, ps,
          radius_eps, b);
      region.eta_km = calib.eta_km;
      region.beta = calib.beta;
      region.xi_km = calib.xi_km;
      region.r_hat_km = calib.r_hat_km;
    }
    // A zero spread means every universe point coincides; the draw above was
    // already uniform and the region keeps everything.
  }

  for (PointId id : full) {
    if (ps.distance(region.perturbed_anchor, id) <= region.r_hat_km) {
      region.restricted_domain.push_back(id);
    }
  }
  return region;
}

// Region-then-perturb mechanism: a quarter of the budget restricts a region
// per copy, the rest runs the alternating-pivot pass inside it, and the two
// copies merge over the full universe.
inline PerturbOutcome atp_perturb(const Trajectory& traj, const PointSet& ps,
                                  double epsilon, RandomSource& rng,
                                  std::optional<int> granularity_override = {},
                                  std::optional<double> fixed_radius = {}) {
  validate_trajectory(traj, ps);
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("atp_perturb: epsilon must be positive");
  }
  GranularityConfig config;
  config.epsilon_k = 9.0 * epsilon / 32.0;
  const int g = granularity_override.value_or(select_granularity(config));
  const double region_eps = 0.25 * epsilon;
  const double pivot_eps = 0.75 * epsilon;
  BudgetLedger ledger(epsilon);
  const AnchorRegion odd_region = restrict_trajectory_region(
      traj, ps, region_eps / 2.0, rng, ledger, fixed_radius);
  const AnchorRegion even_region = restrict_trajectory_region(
      traj, ps, region_eps / 2.0, rng, ledger, fixed_radius);
  const PerturbedCopy odd = pivot_perturb(traj, odd_region.restricted_domain,
                                          ps, pivot_eps / 2.0, g, 1, rng, ledger);
  const PerturbedCopy even = pivot_perturb(traj, even_region.restricted_domain,
                                           ps, pivot_eps / 2.0, g, 0, rng, ledger);
  return {combine_optimal(odd, even, ps, all_point_ids(ps)), std::move(ledger), g};
}

// Empirical check of the anchor-coverage guarantee. The guarantee radius
// solves R = 2 t du / eps + (largest distance from the anchor point strictly
// below R); iterating from the base term is monotone and settles after at
// most one pass per distinct distance. Draws use the same exponential
// mechanism as the anchor perturbation.
struct CoverageReport {
  double radius_km = 0.0;
  double empirical_miss_rate = 0.0;
  double theorem_bound = 0.0;
};

inline CoverageReport coverage_bound_estimate(const PointSet& ps,
                                              PointId anchor_point,
                                              double epsilon, double t,
                                              std::size_t runs,
                                              RandomSource& rng) {
  if (anchor_point < 0 || static_cast<std::size_t>(anchor_point) >= ps.size()) {
    throw std::invalid_argument("coverage_bound_estimate: anchor id outside universe");
  }
  if (!(epsilon > 0.0) || !(t > 0.0) || runs == 0) {
    throw std::invalid_argument("coverage_bound_estimate: bad parameters");
  }
  const double du = ps.diameter_km();
  const double base = 2.0 * t * du / epsilon;
  if (!(base > 0.0)) {
    throw std::invalid_argument("coverage_bound_estimate: degenerate radius");
  }
  std::vector<double> dist(ps.size());
  for (PointId id = 0; id < static_cast<PointId>(ps.size()); ++id) {
    dist[id] = ps.distance(anchor_point, id);
  }
  CoverageReport report;
  report.radius_km = base;
  for (;;) {
    double below = 0.0;
    for (double d : dist) {
      if (d < report.radius_km) below = std::max(below, d);
    }
    const double next = base + below;
    if (next == report.radius_km) break;
    report.radius_km = next;
  }
  std::size_t covered = 0;
  for (double d : dist) {
    if (d <= report.radius_km) ++covered;
  }
  report.theorem_bound = static_cast<double>(ps.size() - covered) /
                         static_cast<double>(covered) * std::exp(-t);

  const std::vector<PointId> full = all_point_ids(ps);
  std::size_t misses = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    const PointId drawn = em_sample(anchor_point, full, ps, du, epsilon, rng);
    if (dist[drawn] > report.radius_km) ++misses;
  }
  report.empirical_miss_rate =
      static_cast<double>(misses) / static_cast<double>(runs);
  return report;
}

}  // namespace trajldp

#endif  // TRAJLDP_ANCHOR_H_
