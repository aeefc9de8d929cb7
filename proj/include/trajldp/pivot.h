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

#ifndef TRAJLDP_PIVOT_H_
#define TRAJLDP_PIVOT_H_

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trajldp/budget.h"
#include "trajldp/direction.h"
#include "trajldp/geo.h"
#include "trajldp/mechanisms.h"
#include "trajldp/random.h"

namespace trajldp {

// Split of 1-based trajectory positions into pivots (i mod 2 == flag) and the
// alternating rest, so every non-pivot neighbors only pivots.
struct PivotPlan {
  int flag = 0;
  std::vector<int> pivot_positions;
  std::vector<int> nonpivot_positions;
};

inline PivotPlan make_pivot_plan(int length, int flag) {
  if (length < 1) throw std::invalid_argument("make_pivot_plan: empty trajectory");
  if (flag != 0 && flag != 1) throw std::invalid_argument("make_pivot_plan: flag must be 0 or 1");
  PivotPlan plan{flag, {}, {}};
  for (int pos = 1; pos <= length; ++pos) {
    (pos % 2 == flag ? plan.pivot_positions : plan.nonpivot_positions).push_back(pos);
  }
  return plan;
}

// One sector constraint a non-pivot inherits from a perturbed neighbor pivot:
// the frame origin is the pivot's perturbed location, psi the true bearing
// from there to the (still unperturbed) target, d_hat the reported sector.
// When the perturbed pivot lands exactly on the target the bearing is
// undefined; the constraint degenerates to sector 0 around north.
struct DirectionConstraint {
  GeoPoint origin;
  double psi = 0.0;
  int d_hat = 0;
};

// Candidate domain for a non-pivot position: the intersection of the
// neighboring sector constraints over the active domain (falling back to the
// whole active domain when the sectors are disjoint), a single sector at the
// endpoints, always joined with the true point. Result is sorted by id.
inline std::vector<PointId> get_point_domain(
    int position, const Trajectory& traj, const PointSet& ps,
    const std::vector<PointId>& active_domain,
    const std::optional<DirectionConstraint>& left,
    const std::optional<DirectionConstraint>& right, int g) {
  std::vector<PointId> domain;
  if (left && right) {
    std::vector<PointId> a =
        get_point_set({left->origin, left->psi, g}, left->d_hat, active_domain, ps);
    const std::vector<PointId> b =
        get_point_set({right->origin, right->psi, g}, right->d_hat, active_domain, ps);
    std::sort(a.begin(), a.end());
    for (PointId id : b) {
      if (std::binary_search(a.begin(), a.end(), id)) domain.push_back(id);
    }
    if (domain.empty()) domain = active_domain;
  } else if (left || right) {
    const DirectionConstraint& c = left ? *left : *right;
    domain = get_point_set({c.origin, c.psi, g}, c.d_hat, active_domain, ps);
  }
  domain.push_back(traj.point_ids.at(position - 1));
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  return domain;
}

// One perturbed trajectory copy plus everything needed to audit it: the
// candidate domain each position was drawn from and the direction
// perturbations performed, as (pivot position, target position) pairs.
struct PerturbedCopy {
  int flag = 0;
  std::vector<PointId> points;
  std::vector<std::vector<PointId>> domains_used;
  std::vector<std::pair<int, int>> directions_perturbed;
};

namespace detail {

inline std::string copy_label(int flag, const char* kind, int pos) {
  return "F" + std::to_string(flag) + "." + kind + "[" + std::to_string(pos) + "]";
}

inline std::string direction_label(int flag, int pivot_pos, int target_pos) {
  return "F" + std::to_string(flag) + ".dir[" + std::to_string(pivot_pos) +
         "->" + std::to_string(target_pos) + "]";
}

}  // namespace detail

// One alternating pass: pivots perturbed independently over the active
// domain, directions from perturbed pivots to their non-pivot neighbors
// perturbed by randomized response, non-pivots perturbed over the sector
// domains those directions induce. Budget split: 3/4 directions, 1/8 pivots,
// 1/8 non-pivots; each allocation divided as if every position (or both
// neighbor slots) consumed it, which over-counts and keeps the ledger safe.
inline PerturbedCopy pivot_perturb(const Trajectory& traj,
                                   const std::vector<PointId>& active_domain,
                                   const PointSet& ps, double epsilon, int g,
                                   int flag, RandomSource& rng,
                                   BudgetLedger& ledger) {
  validate_trajectory(traj, ps);
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("pivot_perturb: epsilon must be positive");
  }
  if (active_domain.empty()) {
    throw std::invalid_argument("pivot_perturb: empty active domain");
  }
  if (flag != 0 && flag != 1) {
    throw std::invalid_argument("pivot_perturb: flag must be 0 or 1");
  }
  const int n = static_cast<int>(traj.size());
  PerturbedCopy copy{flag, std::vector<PointId>(n, -1),
                     std::vector<std::vector<PointId>>(n), {}};

  if (n == 1) {
    // No pivot/direction structure exists; the whole per-copy budget funds
    // one independent draw.
    const double du = subset_diameter(ps, active_domain);
    ledger.spend(detail::copy_label(flag, "point", 1), epsilon);
    copy.points[0] = em_sample(traj.point_ids[0], active_domain, ps, du, epsilon, rng);
    copy.domains_used[0] = active_domain;
    return copy;
  }

  const double eps_dir = 0.75 * epsilon;
  const double eps_pivot = 0.125 * epsilon;
  const double eps_rest = 0.125 * epsilon;
  const double eps_per_direction = eps_dir / (2.0 * (n - 1));
  const PivotPlan plan = make_pivot_plan(n, flag);
  const double active_du = subset_diameter(ps, active_domain);

  for (int pos : plan.pivot_positions) {
    ledger.spend(detail::copy_label(flag, "pivot", pos), eps_pivot / n);
    copy.points[pos - 1] = em_sample(traj.point_ids[pos - 1], active_domain, ps,
                                     active_du, eps_pivot / n, rng);
    copy.domains_used[pos - 1] = active_domain;
  }

  std::vector<std::optional<DirectionConstraint>> left(n + 1), right(n + 1);
  auto perturb_direction = [&](int pivot_pos, int target_pos) {
    const GeoPoint origin = ps.point(copy.points[pivot_pos - 1]);
    const GeoPoint target = ps.point(traj.point_ids[target_pos - 1]);
    ledger.spend(detail::direction_label(flag, pivot_pos, target_pos),
                 eps_per_direction);
    copy.directions_perturbed.emplace_back(pivot_pos, target_pos);
    if (origin == target) {
      return DirectionConstraint{origin, 0.0, 0};  // bearing undefined
    }
    const double psi = initial_bearing(origin, target);
    // The frame is centered on the true bearing, so the true sector is 0.
    return DirectionConstraint{origin, psi, krr_sample(0, g, eps_per_direction, rng)};
  };
  for (int pos : plan.nonpivot_positions) {
    if (pos > 1) left[pos] = perturb_direction(pos - 1, pos);
    if (pos < n) right[pos] = perturb_direction(pos + 1, pos);
  }

  for (int pos : plan.nonpivot_positions) {
    std::vector<PointId> domain =
        get_point_domain(pos, traj, ps, active_domain, left[pos], right[pos], g);
    const double du = subset_diameter(ps, domain);
    ledger.spend(detail::copy_label(flag, "point", pos), eps_rest / n);
    copy.points[pos - 1] = em_sample(traj.point_ids[pos - 1], domain, ps, du,
                                     eps_rest / n, rng);
    copy.domains_used[pos - 1] = std::move(domain);
  }
  return copy;
}

// Per-position merge of two perturbed copies: the domain point minimizing the
// summed distance to the two drawn points. The objective decomposes per
// index, so the per-position argmin is the exact global minimizer; ties go to
// the lowest id.
inline std::vector<PointId> combine_optimal(const PerturbedCopy& copy1,
                                            const PerturbedCopy& copy2,
                                            const PointSet& ps,
                                            const std::vector<PointId>& domain) {
  if (copy1.points.size() != copy2.points.size()) {
    throw std::invalid_argument("combine_optimal: copy length mismatch");
  }
  if (domain.empty()) {
    throw std::invalid_argument("combine_optimal: empty domain");
  }
  std::vector<PointId> out(copy1.points.size());
  for (std::size_t i = 0; i < copy1.points.size(); ++i) {
    PointId best = domain.front();
    double best_cost = ps.distance(best, copy1.points[i]) +
                       ps.distance(best, copy2.points[i]);
    for (PointId r : domain) {
      const double cost =
          ps.distance(r, copy1.points[i]) + ps.distance(r, copy2.points[i]);
      if (cost < best_cost || (cost == best_cost && r < best)) {
        best_cost = cost;
        best = r;
      }
    }
    out[i] = best;
  }
  return out;
}

inline std::vector<PointId> all_point_ids(const PointSet& ps) {
  std::vector<PointId> ids(ps.size());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

// A perturbed trajectory together with its audit trail.
struct PerturbOutcome {
  std::vector<PointId> points;
  BudgetLedger ledger;
  int granularity = 0;  // 0 when the mechanism has no direction structure
};

// Two-copy alternating-pivot mechanism over the full universe: odd-pivot and
// even-pivot passes with half the budget each, merged per position.
inline PerturbOutcome tp_perturb(const Trajectory& traj, const PointSet& ps,
                                 double epsilon, RandomSource& rng,
                                 std::optional<int> granularity_override = {}) {
  validate_trajectory(traj, ps);
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("tp_perturb: epsilon must be positive");
  }
  GranularityConfig config;
  config.epsilon_k = 3.0 * epsilon / 8.0;
  const int g = granularity_override.value_or(select_granularity(config));
  BudgetLedger ledger(epsilon);
  const std::vector<PointId> full = all_point_ids(ps);
  const PerturbedCopy odd = pivot_perturb(traj, full, ps, epsilon / 2.0, g, 1, rng, ledger);
  const PerturbedCopy even = pivot_perturb(traj, full, ps, epsilon / 2.0, g, 0, rng, ledger);
  return {combine_optimal(odd, even, ps, full), std::move(ledger), g};
}

// Baseline: every point perturbed independently over the full universe with
// an even budget split.
inline PerturbOutcome exp_baseline(const Trajectory& traj, const PointSet& ps,
                                   double epsilon, RandomSource& rng) {
  validate_trajectory(traj, ps);
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("exp_baseline: epsilon must be positive");
  }
  const int n = static_cast<int>(traj.size());
  const double per_point = epsilon / n;
  BudgetLedger ledger(epsilon);
  const std::vector<PointId> full = all_point_ids(ps);
  std::vector<PointId> out(n);
  for (int pos = 1; pos <= n; ++pos) {
    ledger.spend("point[" + std::to_string(pos) + "]", per_point);
    out[pos - 1] = em_sample(traj.point_ids[pos - 1], full, ps, ps.diameter_km(),
                             per_point, rng);
  }
  return {std::move(out), std::move(ledger), 0};
}

}  // namespace trajldp

#endif  // TRAJLDP_PIVOT_H_
