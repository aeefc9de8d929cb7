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

#ifndef TRAJLDP_GEO_H_
#define TRAJLDP_GEO_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trajldp {

using PointId = std::int32_t;

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kPi = std::numbers::pi;

struct GeoPoint {
  double lat = 0.0;  // degrees in [-90, 90]
  double lon = 0.0;  // degrees in [-180, 180)

  friend bool operator==(const GeoPoint& a, const GeoPoint& b) {
    return a.lat == b.lat && a.lon == b.lon;
  }
};

inline bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon < 180.0;
}

inline double deg2rad(double deg) { return deg * kPi / 180.0; }

// Great-circle distance in km on a sphere of radius kEarthRadiusKm.
inline double haversine(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = deg2rad(a.lat);
  const double lat2 = deg2rad(b.lat);
  const double s1 = std::sin((lat2 - lat1) / 2.0);
  const double s2 = std::sin(deg2rad(b.lon - a.lon) / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

// Initial great-circle bearing from origin toward target, radians in
// [-pi, pi), clockwise from true north.
inline double initial_bearing(const GeoPoint& origin, const GeoPoint& target) {
  if (origin == target) {
    throw std::invalid_argument("initial_bearing: undefined for coincident points");
  }
  const double lat1 = deg2rad(origin.lat);
  const double lat2 = deg2rad(target.lat);
  const double dlon = deg2rad(target.lon - origin.lon);
  const double y = std::sin(dlon) * std::cos(lat2);
  const double x = std::cos(lat1) * std::sin(lat2) -
                   std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
  double b = std::atan2(y, x);
  if (b == kPi) b = -kPi;
  return b;
}

// Signed smallest rotation from b to a, in [-pi, pi].
inline double ang_diff(double a, double b) {
  double d = std::fmod(a - b, 2.0 * kPi);
  if (d > kPi) d -= 2.0 * kPi;
  if (d < -kPi) d += 2.0 * kPi;
  return d;
}

// The public location universe: immutable after construction. Pairwise
// distances are cached up front for small universes (all target datasets) so
// mechanism hot loops reduce to table lookups.
class PointSet {
 public:
  static constexpr std::size_t kDistanceCacheLimit = 4096;

  explicit PointSet(std::vector<GeoPoint> points) : points_(std::move(points)) {
    if (points_.empty()) {
      throw std::invalid_argument("PointSet: empty point list");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!is_valid(points_[i])) {
        throw std::invalid_argument("PointSet: invalid coordinates at id " +
                                    std::to_string(i));
      }
    }
    const std::size_t n = points_.size();
    if (n <= kDistanceCacheLimit) {
      dist_.assign(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = haversine(points_[i], points_[j]);
          dist_[i * n + j] = d;
          dist_[j * n + i] = d;
          diameter_ = std::max(diameter_, d);
        }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          diameter_ = std::max(diameter_, haversine(points_[i], points_[j]));
        }
      }
    }
  }

  std::size_t size() const { return points_.size(); }
  const GeoPoint& point(PointId id) const { return points_.at(id); }
  const std::vector<GeoPoint>& points() const { return points_; }
  double diameter_km() const { return diameter_; }

  double distance(PointId a, PointId b) const {
    if (!dist_.empty()) {
      return dist_[static_cast<std::size_t>(a) * points_.size() +
                   static_cast<std::size_t>(b)];
    }
    return haversine(points_.at(a), points_.at(b));
  }

  // Nearest member to an arbitrary coordinate; ties go to the lowest id.
  PointId nearest(const GeoPoint& q) const {
    PointId best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const double d = haversine(q, points_[i]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<PointId>(i);
      }
    }
    return best;
  }

 private:
  std::vector<GeoPoint> points_;
  std::vector<double> dist_;
  double diameter_ = 0.0;
};

inline double point_set_diameter(const PointSet& ps) { return ps.diameter_km(); }

// Maximum pairwise distance within a subset of the universe.
inline double subset_diameter(const PointSet& ps, const std::vector<PointId>& ids) {
  double d = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      d = std::max(d, ps.distance(ids[i], ids[j]));
    }
  }
  return d;
}

// An ordered visit sequence over PointSet ids. Timestamps (seconds since
// epoch) are carried only when known; preprocessing is their sole consumer.
struct Trajectory {
  std::vector<PointId> point_ids;
  std::vector<std::int64_t> timestamps;  // empty, or one per point

  std::size_t size() const { return point_ids.size(); }
  bool has_timestamps() const { return !timestamps.empty(); }
};

inline void validate_trajectory(const Trajectory& t, const PointSet& ps) {
  if (t.point_ids.empty()) {
    throw std::invalid_argument("Trajectory: empty");
  }
  if (t.has_timestamps() && t.timestamps.size() != t.point_ids.size()) {
    throw std::invalid_argument("Trajectory: timestamp count mismatch");
  }
  for (PointId id : t.point_ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= ps.size()) {
      throw std::invalid_argument("Trajectory: point id " + std::to_string(id) +
                                  " outside universe");
    }
  }
}

}  // namespace trajldp

#endif  // TRAJLDP_GEO_H_
