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

#ifndef TRAJLDP_METRICS_H_
#define TRAJLDP_METRICS_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "trajldp/geo.h"

namespace trajldp {

namespace detail {

inline void check_aligned(const std::vector<Trajectory>& orig,
                          const std::vector<Trajectory>& pert) {
  if (orig.empty()) {
    throw std::invalid_argument("metrics: empty corpus");
  }
  if (orig.size() != pert.size()) {
    throw std::invalid_argument("metrics: corpus size mismatch");
  }
  for (std::size_t i = 0; i < orig.size(); ++i) {
    if (orig[i].size() != pert[i].size() || orig[i].size() == 0) {
      throw std::invalid_argument("metrics: trajectory length mismatch at index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace detail

// Mean over trajectories of the mean point displacement, normalized by the
// universe diameter so results are comparable across mechanisms on one map.
inline double mean_normalized_error(const std::vector<Trajectory>& orig,
                                    const std::vector<Trajectory>& pert,
                                    const PointSet& ps) {
  detail::check_aligned(orig, pert);
  double total = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i) {
    double traj_sum = 0.0;
    for (std::size_t j = 0; j < orig[i].size(); ++j) {
      traj_sum += ps.distance(orig[i].point_ids[j], pert[i].point_ids[j]);
    }
    total += traj_sum / static_cast<double>(orig[i].size());
  }
  const double diameter = ps.diameter_km();
  if (diameter == 0.0) return 0.0;  // every point coincides, so does every error
  return total / static_cast<double>(orig.size()) / diameter;
}

// Mean over trajectories of the fraction of points that stayed within
// delta_km of their originals, as a percentage.
inline double preservation_range_query(const std::vector<Trajectory>& orig,
                                       const std::vector<Trajectory>& pert,
                                       const PointSet& ps, double delta_km) {
  detail::check_aligned(orig, pert);
  if (delta_km < 0.0) {
    throw std::invalid_argument("preservation_range_query: negative range");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i) {
    std::size_t within = 0;
    for (std::size_t j = 0; j < orig[i].size(); ++j) {
      if (ps.distance(orig[i].point_ids[j], pert[i].point_ids[j]) <= delta_km) {
        ++within;
      }
    }
    total += static_cast<double>(within) / static_cast<double>(orig[i].size());
  }
  return 100.0 * total / static_cast<double>(orig.size());
}

// Visit counts per location before and after perturbation; the most popular
// ceil(fraction * |P|) locations by ORIGINAL count (ties to the lower id) are
// scored by the mean absolute count change.
inline double average_count_difference(const std::vector<Trajectory>& orig,
                                       const std::vector<Trajectory>& pert,
                                       const PointSet& ps, double top_fraction) {
  detail::check_aligned(orig, pert);
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw std::invalid_argument("average_count_difference: fraction outside (0, 1]");
  }
  std::vector<long> before(ps.size(), 0), after(ps.size(), 0);
  for (std::size_t i = 0; i < orig.size(); ++i) {
    for (std::size_t j = 0; j < orig[i].size(); ++j) {
      ++before[orig[i].point_ids[j]];
      ++after[pert[i].point_ids[j]];
    }
  }
  std::vector<PointId> order(ps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    if (before[a] != before[b]) return before[a] > before[b];
    return a < b;
  });
  // The 1e-9 backoff keeps ceil from bumping an exact product (e.g. 0.1 * n
  // represented one ulp high) into the next bucket.
  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(top_fraction * static_cast<double>(ps.size()) - 1e-9)));
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += std::abs(static_cast<double>(before[order[i]] - after[order[i]]));
  }
  return sum / static_cast<double>(k);
}

// Mean and standard error of per-run metric values.
struct MetricSummary {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t runs = 0;
};

inline MetricSummary summarize_runs(const std::vector<double>& values) {
  MetricSummary s;
  s.runs = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_mean = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                              static_cast<double>(values.size()));
  }
  return s;
}

// One evaluation of a perturbed corpus against its original: the normalized
// error plus range-query and count-difference curves over caller-chosen
// parameters.
struct EvalReport {
  double ne = 0.0;
  std::map<double, double> prq;  // delta_km -> percentage
  std::map<double, double> acd;  // top fraction -> mean count change
};

inline EvalReport evaluate_corpus(const std::vector<Trajectory>& orig,
                                  const std::vector<Trajectory>& pert,
                                  const PointSet& ps,
                                  const std::vector<double>& deltas_km,
                                  const std::vector<double>& fractions) {
  EvalReport report;
  report.ne = mean_normalized_error(orig, pert, ps);
  for (double d : deltas_km) {
    report.prq[d] = preservation_range_query(orig, pert, ps, d);
  }
  for (double f : fractions) {
    report.acd[f] = average_count_difference(orig, pert, ps, f);
  }
  return report;
}

}  // namespace trajldp

#endif  // TRAJLDP_METRICS_H_
