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

#include "trajldp/direction.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "trajldp/geo.h"

namespace trajldp {
namespace {

using ::trajldp::testing::scatter_points;

// Independent sector-membership oracle: direct interval containment of the
// bearing offset in [(2d-1)pi/g, (2d+1)pi/g], walking every sector and every
// 2pi image. Boundary hits report the lower-index sector.
int brute_force_sector(const SectorFrame& f, const GeoPoint& p) {
  const double delta = ang_diff(initial_bearing(f.origin, p), f.psi);
  int best = -1;
  for (int d = 0; d < f.g; ++d) {
    const double lo = (2.0 * d - 1.0) * kPi / f.g;
    const double hi = (2.0 * d + 1.0) * kPi / f.g;
    for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
      const double x = delta + shift;
      if (x >= lo && x <= hi) {
        if (best == -1 || d < best) best = d;
      }
    }
  }
  return best;
}

TEST(SectorIndex, TargetDefiningPsiIsSectorZero) {
  const GeoPoint origin{0, 0};
  const GeoPoint target{0.3, 0.2};
  const SectorFrame f{origin, initial_bearing(origin, target), 6};
  EXPECT_EQ(sector_index(f, target), 0);
}

TEST(SectorIndex, OppositeSectorAtGranularityFour) {
  // psi points due east; the point due west sits in sector 2.
  const SectorFrame f{{0, 0}, kPi / 2, 4};
  EXPECT_EQ(sector_index(f, {0, -1}), 2);
}

TEST(SectorIndex, OffsetPiOverThreeAtGranularitySix) {
  // Bearing psi + pi/3 lies in [pi/6, pi/2] = sector 1 for g=6.
  const SectorFrame f{{0, 0}, kPi / 2 - kPi / 3, 6};
  EXPECT_EQ(sector_index(f, {0, 1}), 1);  // due east, exact bearing pi/2
}

TEST(SectorIndex, BoundaryGoesToLowerIndexSector) {
  // Due-east point (bearing exactly pi/2) with psi chosen so the offset hits
  // a boundary exactly.
  const SectorFrame upper{{0, 0}, kPi / 4, 4};  // offset +pi/4: sectors 0|1
  EXPECT_EQ(sector_index(upper, {0, 1}), 0);
  const SectorFrame lower{{0, 0}, 3 * kPi / 4, 4};  // offset -pi/4: sectors 3|0
  EXPECT_EQ(sector_index(lower, {0, 1}), 0);
  const SectorFrame interior{{0, 0}, -kPi / 4, 4};  // offset +3pi/4: sectors 1|2
  EXPECT_EQ(sector_index(interior, {0, 1}), 1);
}

TEST(SectorIndex, CoincidentPointThrows) {
  const SectorFrame f{{1, 1}, 0.0, 4};
  EXPECT_THROW(sector_index(f, {1, 1}), std::invalid_argument);
}

TEST(SectorIndex, AgreesWithBruteForceOracle) {
  const std::vector<GeoPoint> pts = scatter_points(200, 31);
  for (int g : {2, 3, 4, 6, 12}) {
    const SectorFrame f{{49.2827, -123.2}, 0.7, g};
    for (const GeoPoint& p : pts) {
      ASSERT_EQ(sector_index(f, p), brute_force_sector(f, p)) << "g=" << g;
    }
  }
}

TEST(GetPointSet, ClusteredDomainAllInOneSector) {
  std::vector<GeoPoint> pts = {{0, 0}};
  for (int i = 1; i <= 8; ++i) pts.push_back({0.001 * i, 0.05});
  const PointSet ps(pts);
  // psi toward the cluster keeps every member in sector 0.
  const SectorFrame f{{0, 0}, initial_bearing({0, 0}, {0.004, 0.05}), 4};
  std::vector<PointId> domain = {1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(get_point_set(f, 0, domain, ps), domain);
  EXPECT_TRUE(get_point_set(f, 2, domain, ps).empty());
}

TEST(GetPointSet, OriginCoincidentMemberIsSkipped) {
  const PointSet ps({{0, 0}, {0.01, 0}});
  const SectorFrame f{{0, 0}, 0.0, 4};
  EXPECT_EQ(get_point_set(f, 0, {0, 1}, ps), (std::vector<PointId>{1}));
}

TEST(GetPointSet, MatchesSectorIndexFilter) {
  const std::vector<GeoPoint> pts = scatter_points(20, 37);
  const PointSet ps(pts);
  const SectorFrame f{{49.2827, -123.2}, -1.2, 6};
  std::vector<PointId> domain(20);
  for (int i = 0; i < 20; ++i) domain[i] = i;
  for (int d = 0; d < 6; ++d) {
    std::vector<PointId> expected;
    for (PointId id : domain) {
      if (brute_force_sector(f, pts[id]) == d) expected.push_back(id);
    }
    EXPECT_EQ(get_point_set(f, d, domain, ps), expected);
  }
}

TEST(GetPointSet, SectorsPartitionTheDomain) {
  const std::vector<GeoPoint> pts = scatter_points(60, 41);
  const PointSet ps(pts);
  const SectorFrame f{{49.27, -123.23}, 2.8, 12};
  std::vector<PointId> domain(60);
  for (int i = 0; i < 60; ++i) domain[i] = i;
  std::size_t total = 0;
  std::vector<bool> seen(60, false);
  for (int d = 0; d < 12; ++d) {
    for (PointId id : get_point_set(f, d, domain, ps)) {
      EXPECT_FALSE(seen[id]);
      seen[id] = true;
      ++total;
    }
  }
  EXPECT_EQ(total, 60u);
}

TEST(SectorQueryOverlap, TrueSectorHalfCoveredByNarrowQuery) {
  // g=6, theta=pi/12: the query covers half of sector 0.
  EXPECT_NEAR(sector_query_overlap(0, 6, kPi / 12), 0.5, 1e-12);
}

TEST(SectorQueryOverlap, PartitionIdentity) {
  // Sum over sectors of overlap * sector width = query width 2*theta.
  for (int g : {2, 3, 4, 6, 12}) {
    for (double theta : {kPi / 12, kPi / 6, kPi / 3, kPi / 2, 0.9 * kPi, kPi}) {
      double sum = 0.0;
      for (int d = 0; d < g; ++d) {
        sum += sector_query_overlap(d, g, theta) * (2.0 * kPi / g);
      }
      EXPECT_NEAR(sum, 2.0 * theta, 1e-12) << "g=" << g << " theta=" << theta;
    }
  }
}

std::vector<double> default_ranges() {
  return {kPi / 2, kPi / 4, kPi / 6, kPi / 12};
}

TEST(DirectionSuccessProbability, MatchesTabulatedTwoSectorColumn) {
  // Frozen reference values for g=2 under eps_k = 9*eps/32.
  const std::vector<std::pair<double, double>> table = {
      {0.01, 0.25035156}, {0.05, 0.25175778}, {0.1, 0.25351539},
      {0.5, 0.26754921},  {1, 0.28492633},    {2, 0.3185154},
      {4, 0.37745749},    {8, 0.45232527},    {10, 0.47167379}};
  for (const auto& [eps, expected] : table) {
    EXPECT_NEAR(direction_success_probability(2, 9.0 * eps / 32.0, default_ranges()),
                expected, 1e-7)
        << "eps=" << eps;
  }
}

TEST(DirectionSuccessProbability, TwoSectorClosedForm) {
  // For g=2 and the default grid the value reduces to q/2 with
  // q = e^{eps_k} / (1 + e^{eps_k}).
  for (double ek : {0.01, 0.1, 0.5, 1.0, 2.0, 2.8125, 5.0, 10.0}) {
    const double q = std::exp(ek) / (1.0 + std::exp(ek));
    EXPECT_NEAR(direction_success_probability(2, ek, default_ranges()), q / 2.0,
                1e-12);
  }
}

TEST(DirectionSuccessProbability, StrictlyIncreasingInEpsilonK) {
  for (int g : {2, 4, 6, 12}) {
    double prev = 0.0;
    for (double ek = 0.01; ek <= 10.0; ek *= 1.6) {
      const double cur = direction_success_probability(g, ek, default_ranges());
      EXPECT_GT(cur, prev) << "g=" << g << " eps_k=" << ek;
      prev = cur;
    }
  }
}

TEST(SelectGranularity, TrackedBudgetMappings) {
  GranularityConfig config;
  config.epsilon_k = 9.0 * 0.01 / 32.0;
  EXPECT_EQ(select_granularity(config), 2);
  config.epsilon_k = 9.0 * 4.0 / 32.0;  // 1.125
  EXPECT_EQ(select_granularity(config), 4);
  config.epsilon_k = 9.0 * 10.0 / 32.0;  // 2.8125
  EXPECT_EQ(select_granularity(config), 6);
}

TEST(SelectGranularity, SingleCandidateWinsTrivially) {
  GranularityConfig config;
  config.candidates = {4};
  config.epsilon_k = 0.3;
  EXPECT_EQ(select_granularity(config), 4);
}

TEST(SelectGranularity, NearTieResolvesToSmallerGranularity) {
  // At small eps_k the 2- and 4-sector scores differ by well under the tie
  // tolerance; the coarser frame wins.
  GranularityConfig config;
  config.epsilon_k = 0.05;
  const double s2 = direction_success_probability(2, config.epsilon_k,
                                                  config.effective_query_ranges());
  const double s4 = direction_success_probability(4, config.epsilon_k,
                                                  config.effective_query_ranges());
  ASSERT_LT(std::abs(s2 - s4), config.tie_tolerance);
  EXPECT_EQ(select_granularity(config), 2);
}

}  // namespace
}  // namespace trajldp
