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

#include "trajldp/dataset.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "trajldp/geo.h"
#include "trajldp/random.h"

namespace trajldp {
namespace {

using ::trajldp::testing::scatter_points;

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "trajldp_" + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  ASSERT_TRUE(out.is_open());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.is_open());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RawCheckin checkin(const std::string& user, double lat, double lon,
                   std::int64_t ts) {
  return RawCheckin{user, lat, lon, ts};
}

TEST(PointSetIo, RoundTripIsIdentity) {
  const PointSet ps(scatter_points(20, 5));
  const std::string path = temp_path("points_rt.csv");
  save_point_set(path, ps);
  const PointSet back = load_point_set(path);
  ASSERT_EQ(back.size(), ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(back.point(static_cast<PointId>(i)).lat,
              ps.point(static_cast<PointId>(i)).lat);
    EXPECT_EQ(back.point(static_cast<PointId>(i)).lon,
              ps.point(static_cast<PointId>(i)).lon);
  }
}

TEST(PointSetIo, SaveIsByteStable) {
  const PointSet ps(scatter_points(15, 9));
  const std::string a = temp_path("points_a.csv");
  const std::string b = temp_path("points_b.csv");
  save_point_set(a, ps);
  save_point_set(b, load_point_set(a));
  EXPECT_EQ(read_file(a), read_file(b));
}

TEST(PointSetIo, RejectsBadHeader) {
  const std::string path = temp_path("points_hdr.csv");
  write_file(path, "lat,lon,id\n0,1.0,2.0\n");
  try {
    load_point_set(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":1:"), std::string::npos);
  }
}

TEST(PointSetIo, RejectsNonContiguousIds) {
  const std::string path = temp_path("points_ids.csv");
  write_file(path, "id,lat,lon\n0,1.0,2.0\n2,1.0,2.1\n");
  try {
    load_point_set(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos);
  }
}

TEST(PointSetIo, RejectsNanAndOutOfRangeCoordinates) {
  const std::string nan_path = temp_path("points_nan.csv");
  write_file(nan_path, "id,lat,lon\n0,nan,2.0\n");
  EXPECT_THROW(load_point_set(nan_path), ParseError);

  const std::string lat_path = temp_path("points_lat.csv");
  write_file(lat_path, "id,lat,lon\n0,91.0,2.0\n");
  EXPECT_THROW(load_point_set(lat_path), ParseError);

  const std::string lon_path = temp_path("points_lon.csv");
  write_file(lon_path, "id,lat,lon\n0,1.0,-180.5\n");
  EXPECT_THROW(load_point_set(lon_path), ParseError);

  const std::string junk_path = temp_path("points_junk.csv");
  write_file(junk_path, "id,lat,lon\n0,1.0,2.0x\n");
  try {
    load_point_set(junk_path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
}

TEST(PointSetIo, RejectsAntimeridianSpan) {
  const std::string bad = temp_path("points_span_bad.csv");
  write_file(bad, "id,lat,lon\n0,0.0,-170.0\n1,0.0,20.0\n");
  try {
    load_point_set(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("span"), std::string::npos);
  }
  // A span of exactly 180 degrees is still contiguous.
  const std::string ok = temp_path("points_span_ok.csv");
  write_file(ok, "id,lat,lon\n0,0.0,-170.0\n1,0.0,10.0\n");
  EXPECT_EQ(load_point_set(ok).size(), 2u);
}

TEST(PointSetIo, RejectsEmptyAndWrongArity) {
  const std::string empty = temp_path("points_empty.csv");
  write_file(empty, "id,lat,lon\n");
  EXPECT_THROW(load_point_set(empty), ParseError);

  const std::string arity = temp_path("points_arity.csv");
  write_file(arity, "id,lat,lon\n0,1.0\n");
  EXPECT_THROW(load_point_set(arity), ParseError);

  EXPECT_THROW(load_point_set(temp_path("no_such_file.csv")), IoError);
}

TEST(TrajectoryIo, RoundTripWithoutTimestamps) {
  const PointSet ps(scatter_points(10, 3));
  std::vector<Trajectory> corpus(3);
  corpus[0].point_ids = {0, 4, 4, 9};
  corpus[1].point_ids = {7};
  corpus[2].point_ids = {2, 1};
  const std::string path = temp_path("traj_rt.csv");
  save_trajectories(path, corpus);
  const std::vector<Trajectory> back = load_trajectories(path, ps);
  ASSERT_EQ(back.size(), corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(back[i].point_ids, corpus[i].point_ids);
    EXPECT_FALSE(back[i].has_timestamps());
  }
}

TEST(TrajectoryIo, RoundTripWithTimestamps) {
  const PointSet ps(scatter_points(6, 8));
  std::vector<Trajectory> corpus(2);
  corpus[0].point_ids = {0, 5};
  corpus[0].timestamps = {1700000000, 1700000600};
  corpus[1].point_ids = {3};
  corpus[1].timestamps = {1700009999};
  const std::string path = temp_path("traj_ts.csv");
  save_trajectories(path, corpus);
  const std::vector<Trajectory> back = load_trajectories(path, ps);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].timestamps, corpus[0].timestamps);
  EXPECT_EQ(back[1].timestamps, corpus[1].timestamps);
  EXPECT_EQ(back[0].point_ids, corpus[0].point_ids);
}

TEST(TrajectoryIo, EmptyBodyIsEmptyCorpus) {
  const PointSet ps(scatter_points(4, 2));
  const std::string path = temp_path("traj_empty.csv");
  write_file(path, "traj_id,seq,point_id\n");
  EXPECT_TRUE(load_trajectories(path, ps).empty());
  // And saving an empty corpus round-trips through the same file shape.
  save_trajectories(path, {});
  EXPECT_TRUE(load_trajectories(path, ps).empty());
}

TEST(TrajectoryIo, MissingPointIdErrorsAtitsLine) {
  const PointSet ps(scatter_points(4, 2));
  const std::string path = temp_path("traj_missing.csv");
  write_file(path, "traj_id,seq,point_id\n0,0,1\n0,1,99\n");
  try {
    load_trajectories(path, ps);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("99"), std::string::npos);
  }
}

TEST(TrajectoryIo, RejectsUnsortedRows) {
  const PointSet ps(scatter_points(4, 2));
  const std::string by_seq = temp_path("traj_seq.csv");
  write_file(by_seq, "traj_id,seq,point_id\n0,1,1\n0,0,2\n");
  EXPECT_THROW(load_trajectories(by_seq, ps), ParseError);

  const std::string by_traj = temp_path("traj_order.csv");
  write_file(by_traj, "traj_id,seq,point_id\n1,0,1\n0,0,2\n");
  EXPECT_THROW(load_trajectories(by_traj, ps), ParseError);

  const std::string dup = temp_path("traj_dup.csv");
  write_file(dup, "traj_id,seq,point_id\n0,0,1\n0,0,2\n");
  EXPECT_THROW(load_trajectories(dup, ps), ParseError);
}

TEST(TrajectoryIo, MixedTimestampSaveIsRejected) {
  std::vector<Trajectory> corpus(2);
  corpus[0].point_ids = {0};
  corpus[0].timestamps = {5};
  corpus[1].point_ids = {1};
  EXPECT_THROW(save_trajectories(temp_path("traj_mixed.csv"), corpus),
               std::invalid_argument);
}

TEST(CheckinIo, RoundTripIsIdentity) {
  std::vector<RawCheckin> raw = {
      checkin("alice", 49.25, -123.1, 1700000000),
      checkin("bob", 49.5, -123.0, 1700000300),
      checkin("alice", 49.26, -123.11, 1700001000),
  };
  const std::string path = temp_path("checkins_rt.csv");
  save_checkins(path, raw);
  const std::vector<RawCheckin> back = load_checkins(path);
  ASSERT_EQ(back.size(), raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    EXPECT_EQ(back[i].user, raw[i].user);
    EXPECT_EQ(back[i].lat, raw[i].lat);
    EXPECT_EQ(back[i].lon, raw[i].lon);
    EXPECT_EQ(back[i].timestamp, raw[i].timestamp);
  }
}

TEST(CheckinIo, RejectsBadRows) {
  const std::string hdr = temp_path("checkins_hdr.csv");
  write_file(hdr, "user,lat,lon\n");
  EXPECT_THROW(load_checkins(hdr), ParseError);

  const std::string coord = temp_path("checkins_coord.csv");
  write_file(coord, "user,lat,lon,timestamp\nu,95.0,0.0,5\n");
  EXPECT_THROW(load_checkins(coord), ParseError);
}

// A small universe where points are identified by exact coordinates.
PointSet toy_universe() {
  return PointSet(std::vector<GeoPoint>{
      {49.00, -123.00}, {49.01, -123.00}, {49.02, -123.00}, {49.03, -123.00}});
}

TEST(Preprocess, CloseBurstThinsToOnePoint) {
  const PointSet ps = toy_universe();
  const std::vector<RawCheckin> raw = {
      checkin("u", 49.00, -123.00, 1000),
      checkin("u", 49.01, -123.00, 1000 + 300),
  };
  RandomSource rng(7);
  const std::vector<Trajectory> out = preprocess(raw, ps, rng);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(out[0].size(), 1u);
  EXPECT_TRUE(out[0].point_ids[0] == 0 || out[0].point_ids[0] == 1);
  // Seed-deterministic choice.
  RandomSource rng2(7);
  const std::vector<Trajectory> again = preprocess(raw, ps, rng2);
  EXPECT_EQ(again[0].point_ids, out[0].point_ids);
}

TEST(Preprocess, FourHourGapSplits) {
  const PointSet ps = toy_universe();
  const std::vector<RawCheckin> raw = {
      checkin("u", 49.00, -123.00, 0),
      checkin("u", 49.01, -123.00, 4 * 3600),
  };
  RandomSource rng(1);
  const std::vector<Trajectory> out = preprocess(raw, ps, rng);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].point_ids, (std::vector<PointId>{0}));
  EXPECT_EQ(out[1].point_ids, (std::vector<PointId>{1}));
  EXPECT_EQ(out[0].timestamps, (std::vector<std::int64_t>{0}));
}

TEST(Preprocess, ExactlyThreeHourGapDoesNotSplit) {
  const PointSet ps = toy_universe();
  const std::vector<RawCheckin> raw = {
      checkin("u", 49.00, -123.00, 0),
      checkin("u", 49.01, -123.00, 3 * 3600),
  };
  RandomSource rng(1);
  const std::vector<Trajectory> out = preprocess(raw, ps, rng);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].point_ids, (std::vector<PointId>{0, 1}));
}

TEST(Preprocess, AlternatingBurstsAndGapsLeaveSingletons) {
  const PointSet ps = toy_universe();
  // Six check-ins: 5-minute then 4-hour gaps, repeated. Each 5-minute pair
  // thins to one survivor and every surviving gap exceeds three hours.
  std::vector<RawCheckin> raw;
  std::int64_t t = 0;
  for (int pair = 0; pair < 3; ++pair) {
    raw.push_back(checkin("u", 49.00, -123.00, t));
    raw.push_back(checkin("u", 49.01, -123.00, t + 300));
    t += 300 + 4 * 3600;
  }
  RandomSource rng(5);
  const std::vector<Trajectory> out = preprocess(raw, ps, rng);
  ASSERT_EQ(out.size(), 3u);
  for (const Trajectory& traj : out) EXPECT_EQ(traj.size(), 1u);
}

TEST(Preprocess, SingletonSurvives) {
  const PointSet ps = toy_universe();
  RandomSource rng(2);
  const std::vector<Trajectory> out =
      preprocess({checkin("u", 49.02, -123.00, 77)}, ps, rng);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].point_ids, (std::vector<PointId>{2}));
}

TEST(Preprocess, DropsLocationsOutsideUniverse) {
  const PointSet ps = toy_universe();
  const std::vector<RawCheckin> raw = {
      checkin("u", 10.0, 10.0, 0),
      checkin("u", 49.00, -123.00, 20000),
      checkin("u", 11.0, 11.0, 40000),
  };
  RandomSource rng(3);
  const std::vector<Trajectory> out = preprocess(raw, ps, rng);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].point_ids, (std::vector<PointId>{0}));
}

TEST(Preprocess, UsersAreIndependentAndKeepFirstAppearanceOrder) {
  const PointSet ps = toy_universe();
  // Interleaved users 5 minutes apart; per user every gap is 2 hours, so
  // nothing thins and nothing splits within a user.
  std::vector<RawCheckin> raw;
  for (int i = 0; i < 3; ++i) {
    raw.push_back(checkin("b", 49.00, -123.00, i * 2 * 3600));
    raw.push_back(checkin("a", 49.01, -123.00, i * 2 * 3600 + 300));
  }
  RandomSource rng(4);
  const std::vector<Trajectory> out = preprocess(raw, ps, rng);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].point_ids, (std::vector<PointId>{0, 0, 0}));  // user b first
  EXPECT_EQ(out[1].point_ids, (std::vector<PointId>{1, 1, 1}));
}

TEST(Preprocess, DuplicateUniverseCoordinatesMapToLowestId) {
  const PointSet ps(std::vector<GeoPoint>{
      {49.00, -123.00}, {49.00, -123.00}, {49.01, -123.00}});
  RandomSource rng(6);
  const std::vector<Trajectory> out =
      preprocess({checkin("u", 49.00, -123.00, 0)}, ps, rng);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].point_ids, (std::vector<PointId>{0}));
}

TEST(Preprocess, UnsortedInputIsSortedPerUser) {
  const PointSet ps = toy_universe();
  const std::vector<RawCheckin> raw = {
      checkin("u", 49.01, -123.00, 5 * 3600),
      checkin("u", 49.00, -123.00, 0),
  };
  RandomSource rng(8);
  const std::vector<Trajectory> out = preprocess(raw, ps, rng);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].point_ids, (std::vector<PointId>{0}));
  EXPECT_EQ(out[1].point_ids, (std::vector<PointId>{1}));
}

TEST(Preprocess, NoRetainedPairWithinWindowAcrossSeeds) {
  const PointSet ps = toy_universe();
  // Chains like 0 s, 500 s, 1000 s can legally keep one or two points, but
  // never two retained points closer than 10 minutes.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::vector<RawCheckin> raw;
    RandomSource gen(seed * 977 + 13);
    std::int64_t t = 0;
    for (int i = 0; i < 12; ++i) {
      t += static_cast<std::int64_t>(gen.uniform_int(1200));
      raw.push_back(checkin("u", 49.00 + 0.01 * static_cast<double>(i % 4),
                            -123.00, t));
    }
    RandomSource rng(seed);
    const std::vector<Trajectory> out = preprocess(raw, ps, rng);
    std::int64_t prev = -1;
    for (const Trajectory& traj : out) {
      for (std::int64_t ts : traj.timestamps) {
        if (prev >= 0) EXPECT_GE(ts - prev, 600);
        prev = ts;
      }
    }
  }
}

TEST(Preprocess, IdempotentOnItsOwnOutput) {
  const PointSet ps = toy_universe();
  std::vector<RawCheckin> raw;
  RandomSource gen(42);
  std::int64_t t = 0;
  for (int i = 0; i < 40; ++i) {
    t += static_cast<std::int64_t>(gen.uniform_int(3 * 3600));
    raw.push_back(
        checkin("u", 49.00 + 0.01 * static_cast<double>(gen.uniform_int(4)),
                -123.00, t));
  }
  RandomSource rng(9);
  const std::vector<Trajectory> first = preprocess(raw, ps, rng);
  // Feed the output back through as check-ins from the same user.
  std::vector<RawCheckin> echoed;
  for (const Trajectory& traj : first) {
    for (std::size_t j = 0; j < traj.size(); ++j) {
      const GeoPoint& p = ps.point(traj.point_ids[j]);
      echoed.push_back(checkin("u", p.lat, p.lon, traj.timestamps[j]));
    }
  }
  RandomSource rng2(1234);  // any seed: no rule should fire again
  const std::vector<Trajectory> second = preprocess(echoed, ps, rng2);
  ASSERT_EQ(second.size(), first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(second[i].point_ids, first[i].point_ids);
    EXPECT_EQ(second[i].timestamps, first[i].timestamps);
  }
}

TEST(TopKPoints, RawHandTallyAndTies) {
  std::vector<RawCheckin> raw;
  // A appears 3 times, C twice, B once; appearance order A, B, C.
  raw.push_back(checkin("u", 1.0, 1.0, 0));   // A
  raw.push_back(checkin("u", 2.0, 2.0, 1));   // B
  raw.push_back(checkin("u", 3.0, 3.0, 2));   // C
  raw.push_back(checkin("u", 1.0, 1.0, 3));   // A
  raw.push_back(checkin("v", 3.0, 3.0, 4));   // C
  raw.push_back(checkin("v", 1.0, 1.0, 5));   // A
  const PointSet top1 = top_k_points(raw, 1);
  ASSERT_EQ(top1.size(), 1u);
  EXPECT_EQ(top1.point(0).lat, 1.0);
  const PointSet top2 = top_k_points(raw, 2);
  ASSERT_EQ(top2.size(), 2u);
  EXPECT_EQ(top2.point(0).lat, 1.0);  // A first by appearance
  EXPECT_EQ(top2.point(1).lat, 3.0);  // C beats B on count
  const PointSet all = top_k_points(raw, 3);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all.point(1).lat, 2.0);  // appearance order retained
  EXPECT_THROW(top_k_points(raw, 0), std::invalid_argument);
  EXPECT_THROW(top_k_points(raw, 4), std::invalid_argument);
}

TEST(TopKPoints, RawTieBreaksTowardEarlierAppearance) {
  std::vector<RawCheckin> raw = {
      checkin("u", 5.0, 5.0, 0),
      checkin("u", 6.0, 6.0, 1),
      checkin("u", 6.0, 6.0, 2),
      checkin("u", 5.0, 5.0, 3),
  };
  const PointSet top1 = top_k_points(raw, 1);
  EXPECT_EQ(top1.point(0).lat, 5.0);
}

TEST(TopKPoints, CorpusOverloadIdentityAndMode) {
  const PointSet ps = toy_universe();
  std::vector<Trajectory> corpus(2);
  corpus[0].point_ids = {2, 2, 1};
  corpus[1].point_ids = {2, 0};
  const PointSet all = top_k_points(corpus, ps, ps.size());
  ASSERT_EQ(all.size(), ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(all.point(static_cast<PointId>(i)).lat,
              ps.point(static_cast<PointId>(i)).lat);
  }
  const PointSet mode = top_k_points(corpus, ps, 1);
  ASSERT_EQ(mode.size(), 1u);
  EXPECT_EQ(mode.point(0).lat, ps.point(2).lat);
  // Ids 0 and 1 tie on one visit each; the two-point cut takes 2 then 0.
  const PointSet two = top_k_points(corpus, ps, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two.point(0).lat, ps.point(0).lat);
  EXPECT_EQ(two.point(1).lat, ps.point(2).lat);
  EXPECT_THROW(top_k_points(corpus, ps, 9), std::invalid_argument);
}

TEST(GenerateSynthetic, ExactShapeAndReachBound) {
  const PointSet ps(scatter_points(30, 77));
  SynthConfig cfg;
  cfg.n_trajectories = 40;
  cfg.length = 6;
  cfg.reach_bound_km = 2.0;
  const RandomSource rng(11);
  const std::vector<Trajectory> corpus = generate_synthetic(ps, cfg, rng);
  ASSERT_EQ(corpus.size(), cfg.n_trajectories);
  for (const Trajectory& t : corpus) {
    ASSERT_EQ(t.size(), cfg.length);
    for (std::size_t j = 1; j < t.size(); ++j) {
      EXPECT_NE(t.point_ids[j], t.point_ids[j - 1]);
      EXPECT_LE(ps.distance(t.point_ids[j - 1], t.point_ids[j]),
                cfg.reach_bound_km);
    }
  }
}

TEST(GenerateSynthetic, UnboundedReachWalksTheWholeUniverse) {
  const PointSet ps(scatter_points(8, 3));
  SynthConfig cfg;
  cfg.n_trajectories = 300;
  cfg.length = 2;
  const RandomSource rng(13);
  const std::vector<Trajectory> corpus = generate_synthetic(ps, cfg, rng);
  std::set<PointId> successors_of_zero;
  for (const Trajectory& t : corpus) {
    EXPECT_NE(t.point_ids[1], t.point_ids[0]);
    if (t.point_ids[0] == 0) successors_of_zero.insert(t.point_ids[1]);
  }
  // Every non-start point shows up as a successor eventually.
  EXPECT_GE(successors_of_zero.size(), 5u);
}

TEST(GenerateSynthetic, TightReachBoundErrors) {
  const PointSet ps(scatter_points(10, 19));
  SynthConfig cfg;
  cfg.n_trajectories = 1;
  cfg.length = 3;
  cfg.reach_bound_km = 1e-6;  // below the minimum pairwise distance
  const RandomSource rng(1);
  EXPECT_THROW(generate_synthetic(ps, cfg, rng), std::invalid_argument);
  // The connectivity requirement applies regardless of length.
  cfg.length = 1;
  EXPECT_THROW(generate_synthetic(ps, cfg, rng), std::invalid_argument);
}

TEST(GenerateSynthetic, IsolatedPointNeverStartsLongWalks) {
  // Three mutual neighbors and one far-away island; walks of length 2 must
  // resample away from the island.
  std::vector<GeoPoint> pts = {{49.000, -123.000},
                               {49.001, -123.000},
                               {49.002, -123.000},
                               {55.000, -100.000}};
  const PointSet ps(std::move(pts));
  SynthConfig cfg;
  cfg.n_trajectories = 200;
  cfg.length = 2;
  cfg.reach_bound_km = 1.0;
  const RandomSource rng(17);
  const std::vector<Trajectory> corpus = generate_synthetic(ps, cfg, rng);
  for (const Trajectory& t : corpus) {
    for (PointId id : t.point_ids) EXPECT_NE(id, 3);
  }
}

TEST(GenerateSynthetic, LengthOneNeedsNoSuccessor) {
  const PointSet ps(scatter_points(5, 21));
  SynthConfig cfg;
  cfg.n_trajectories = 10;
  cfg.length = 1;
  const RandomSource rng(23);
  const std::vector<Trajectory> corpus = generate_synthetic(ps, cfg, rng);
  for (const Trajectory& t : corpus) EXPECT_EQ(t.size(), 1u);
}

TEST(GenerateSynthetic, DeterministicAndPrefixStable) {
  const PointSet ps(scatter_points(20, 31));
  SynthConfig cfg;
  cfg.n_trajectories = 8;
  cfg.length = 4;
  cfg.reach_bound_km = 3.0;
  const RandomSource rng(29);
  const std::vector<Trajectory> a = generate_synthetic(ps, cfg, rng);
  const std::vector<Trajectory> b = generate_synthetic(ps, cfg, rng);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].point_ids, b[i].point_ids);
  }
  // Trajectory streams derive from the index, so a shorter corpus is a prefix.
  cfg.n_trajectories = 3;
  const std::vector<Trajectory> prefix = generate_synthetic(ps, cfg, rng);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    EXPECT_EQ(prefix[i].point_ids, a[i].point_ids);
  }
  const RandomSource other(30);
  const std::vector<Trajectory> c = generate_synthetic(ps, cfg, other);
  bool all_equal = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    all_equal = all_equal && c[i].point_ids == a[i].point_ids;
  }
  EXPECT_FALSE(all_equal);
}

TEST(GenerateSynthetic, RejectsBadConfig) {
  const PointSet ps(scatter_points(5, 37));
  const RandomSource rng(1);
  SynthConfig cfg;
  cfg.n_trajectories = 1;
  cfg.length = 0;
  EXPECT_THROW(generate_synthetic(ps, cfg, rng), std::invalid_argument);
  cfg.length = 2;
  cfg.reach_bound_km = 0.0;
  EXPECT_THROW(generate_synthetic(ps, cfg, rng), std::invalid_argument);
  cfg.reach_bound_km = -1.0;
  EXPECT_THROW(generate_synthetic(ps, cfg, rng), std::invalid_argument);
  const PointSet lonely(std::vector<GeoPoint>{{1.0, 1.0}});
  cfg.reach_bound_km = std::numeric_limits<double>::infinity();
  EXPECT_THROW(generate_synthetic(lonely, cfg, rng), std::invalid_argument);
}

}  // namespace
}  // namespace trajldp
