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

#ifndef TRAJLDP_DATASET_H_
#define TRAJLDP_DATASET_H_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trajldp/geo.h"
#include "trajldp/random.h"

namespace trajldp {

// A file could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file opened fine but its contents violate the schema. Messages carry
// "path:line:" prefixes.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawCheckin {
  std::string user;
  double lat = 0.0;
  double lon = 0.0;
  std::int64_t timestamp = 0;  // seconds since epoch
};

struct SynthConfig {
  std::size_t n_trajectories = 0;
  std::size_t length = 1;
  double reach_bound_km = std::numeric_limits<double>::infinity();
};

namespace detail {

constexpr std::int64_t kThinWindowSeconds = 600;
constexpr std::int64_t kSplitGapSeconds = 10800;

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

[[noreturn]] inline void parse_fail(const std::string& path, std::size_t line,
                                    const std::string& message) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + message);
}

template <typename T>
T parse_number(std::string_view field, const std::string& path,
               std::size_t line, const char* what) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    parse_fail(path, line, std::string("invalid ") + what + " '" +
                               std::string(field) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline void check_coordinates(double lat, double lon, const std::string& path,
                              std::size_t line) {
  if (!(lat >= -90.0 && lat <= 90.0)) {
    parse_fail(path, line, "latitude out of range");
  }
  if (!(lon >= -180.0 && lon <= 180.0)) {
    parse_fail(path, line, "longitude out of range");
  }
}

inline std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace detail

// points.csv: header `id,lat,lon`, ids 0-based and contiguous. Point sets
// straddling the 180th meridian (longitude span above 180 degrees) are
// rejected; the sector geometry assumes a locally contiguous region.
inline PointSet load_point_set(const std::string& path) {
  const std::vector<std::string> lines = detail::read_lines(path);
  if (lines.empty() || lines[0] != "id,lat,lon") {
    detail::parse_fail(path, 1, "expected header 'id,lat,lon'");
  }
  std::vector<GeoPoint> points;
  double lon_min = std::numeric_limits<double>::infinity();
  double lon_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty() && i + 1 == lines.size()) break;  // trailing newline
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 3) detail::parse_fail(path, line_no, "expected 3 fields");
    const auto id =
        detail::parse_number<std::int64_t>(fields[0], path, line_no, "id");
    if (id != static_cast<std::int64_t>(points.size())) {
      detail::parse_fail(path, line_no, "ids must be 0-based and contiguous");
    }
    const double lat =
        detail::parse_number<double>(fields[1], path, line_no, "latitude");
    const double lon =
        detail::parse_number<double>(fields[2], path, line_no, "longitude");
    detail::check_coordinates(lat, lon, path, line_no);
    lon_min = std::min(lon_min, lon);
    lon_max = std::max(lon_max, lon);
    if (lon_max - lon_min > 180.0) {
      detail::parse_fail(path, line_no, "longitude span exceeds 180 degrees");
    }
    points.push_back({lat, lon});
  }
  if (points.empty()) detail::parse_fail(path, 1, "point set is empty");
  return PointSet(std::move(points));
}

inline void save_point_set(const std::string& path, const PointSet& ps) {
  std::ofstream out = detail::open_for_write(path);
  out << "id,lat,lon\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const GeoPoint& p = ps.point(static_cast<PointId>(i));
    out << i << ',' << detail::format_double(p.lat) << ','
        << detail::format_double(p.lon) << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

// trajectories.csv: header `traj_id,seq,point_id[,timestamp]`, rows sorted by
// (traj_id, seq). Every point id must exist in ps. An empty body is a valid
// empty corpus.
inline std::vector<Trajectory> load_trajectories(const std::string& path,
                                                 const PointSet& ps) {
  const std::vector<std::string> lines = detail::read_lines(path);
  bool with_timestamp = false;
  if (lines.empty()) detail::parse_fail(path, 1, "missing header");
  if (lines[0] == "traj_id,seq,point_id,timestamp") {
    with_timestamp = true;
  } else if (lines[0] != "traj_id,seq,point_id") {
    detail::parse_fail(path, 1,
                       "expected header 'traj_id,seq,point_id[,timestamp]'");
  }
  std::vector<Trajectory> corpus;
  std::int64_t prev_traj = -1;
  std::int64_t prev_seq = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const auto fields = detail::split_fields(lines[i]);
    const std::size_t expected = with_timestamp ? 4 : 3;
    if (fields.size() != expected) {
      detail::parse_fail(path, line_no,
                         "expected " + std::to_string(expected) + " fields");
    }
    const auto traj_id =
        detail::parse_number<std::int64_t>(fields[0], path, line_no, "traj_id");
    const auto seq =
        detail::parse_number<std::int64_t>(fields[1], path, line_no, "seq");
    const auto point_id =
        detail::parse_number<PointId>(fields[2], path, line_no, "point_id");
    if (point_id < 0 || static_cast<std::size_t>(point_id) >= ps.size()) {
      detail::parse_fail(path, line_no,
                         "point id " + std::to_string(point_id) +
                             " not in the point set");
    }
    if (traj_id < prev_traj ||
        (traj_id == prev_traj && seq <= prev_seq)) {
      detail::parse_fail(path, line_no, "rows not sorted by (traj_id, seq)");
    }
    if (traj_id != prev_traj) corpus.emplace_back();
    corpus.back().point_ids.push_back(point_id);
    if (with_timestamp) {
      corpus.back().timestamps.push_back(detail::parse_number<std::int64_t>(
          fields[3], path, line_no, "timestamp"));
    }
    prev_traj = traj_id;
    prev_seq = seq;
  }
  return corpus;
}

// Writes trajectories with 0-based traj_id/seq. The timestamp column appears
// only when every trajectory carries timestamps; a mix is an error.
inline void save_trajectories(const std::string& path,
                              const std::vector<Trajectory>& corpus) {
  bool any_ts = false, all_ts = true;
  for (const Trajectory& t : corpus) {
    if (t.has_timestamps()) {
      any_ts = true;
      if (t.timestamps.size() != t.point_ids.size()) {
        throw std::invalid_argument("save_trajectories: timestamp count mismatch");
      }
    } else {
      all_ts = false;
    }
  }
  if (any_ts && !all_ts) {
    throw std::invalid_argument(
        "save_trajectories: mixed timestamped and plain trajectories");
  }
  std::ofstream out = detail::open_for_write(path);
  out << (any_ts ? "traj_id,seq,point_id,timestamp" : "traj_id,seq,point_id")
      << '\n';
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < corpus[i].size(); ++j) {
      out << i << ',' << j << ',' << corpus[i].point_ids[j];
      if (any_ts) out << ',' << corpus[i].timestamps[j];
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed for " + path);
}

// checkins.csv: header `user,lat,lon,timestamp`; user is free text without
// commas.
inline std::vector<RawCheckin> load_checkins(const std::string& path) {
  const std::vector<std::string> lines = detail::read_lines(path);
  if (lines.empty() || lines[0] != "user,lat,lon,timestamp") {
    detail::parse_fail(path, 1, "expected header 'user,lat,lon,timestamp'");
  }
  std::vector<RawCheckin> raw;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 4) detail::parse_fail(path, line_no, "expected 4 fields");
    RawCheckin c;
    c.user = std::string(fields[0]);
    c.lat = detail::parse_number<double>(fields[1], path, line_no, "latitude");
    c.lon = detail::parse_number<double>(fields[2], path, line_no, "longitude");
    detail::check_coordinates(c.lat, c.lon, path, line_no);
    c.timestamp = detail::parse_number<std::int64_t>(fields[3], path, line_no,
                                                     "timestamp");
    raw.push_back(std::move(c));
  }
  return raw;
}

inline void save_checkins(const std::string& path,
                          const std::vector<RawCheckin>& raw) {
  std::ofstream out = detail::open_for_write(path);
  out << "user,lat,lon,timestamp\n";
  for (const RawCheckin& c : raw) {
    out << c.user << ',' << detail::format_double(c.lat) << ','
        << detail::format_double(c.lon) << ',' << c.timestamp << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

// Turns raw check-ins into trajectories over ps. Check-ins are matched to
// points by exact coordinate equality (duplicates in ps resolve to the lowest
// id); unmatched check-ins are dropped. Per user, in time order: bursts
// closer than 10 minutes are randomly thinned to one point, then the stream
// is split wherever the gap exceeds 3 hours. Singleton trajectories survive.
// Users are processed in order of first appearance; equal timestamps keep
// input order.
inline std::vector<Trajectory> preprocess(const std::vector<RawCheckin>& raw,
                                          const PointSet& ps,
                                          RandomSource& rng) {
  std::map<std::pair<double, double>, PointId> by_coord;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const GeoPoint& p = ps.point(static_cast<PointId>(i));
    by_coord.emplace(std::make_pair(p.lat, p.lon), static_cast<PointId>(i));
  }
  struct Event {
    std::int64_t ts;
    PointId id;
  };
  std::vector<std::string> user_order;
  std::unordered_map<std::string, std::vector<Event>> per_user;
  for (const RawCheckin& c : raw) {
    const auto it = by_coord.find(std::make_pair(c.lat, c.lon));
    if (it == by_coord.end()) continue;
    auto [slot, inserted] = per_user.try_emplace(c.user);
    if (inserted) user_order.push_back(c.user);
    slot->second.push_back({c.timestamp, it->second});
  }
  std::vector<Trajectory> corpus;
  for (const std::string& user : user_order) {
    std::vector<Event>& events = per_user[user];
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.ts < b.ts; });
    // Thin bursts: whenever the incoming event sits inside the 10-minute
    // window of the last retained one, a fair coin deletes one of the two;
    // deleting the retained one re-exposes its predecessor, so the scan
    // repeats until the window is clear.
    std::vector<Event> kept;
    for (const Event& e : events) {
      bool drop_current = false;
      while (!kept.empty() && e.ts - kept.back().ts < detail::kThinWindowSeconds) {
        if (rng.bernoulli(0.5)) {
          drop_current = true;
          break;
        }
        kept.pop_back();
      }
      if (!drop_current) kept.push_back(e);
    }
    Trajectory cur;
    for (const Event& e : kept) {
      if (!cur.point_ids.empty() &&
          e.ts - cur.timestamps.back() > detail::kSplitGapSeconds) {
        corpus.push_back(std::move(cur));
        cur = Trajectory{};
      }
      cur.point_ids.push_back(e.id);
      cur.timestamps.push_back(e.ts);
    }
    if (!cur.point_ids.empty()) corpus.push_back(std::move(cur));
  }
  return corpus;
}

// The k most-visited distinct locations in a raw check-in stream, ties broken
// toward earlier first appearance. Returned ids follow first-appearance order.
inline PointSet top_k_points(const std::vector<RawCheckin>& raw, std::size_t k) {
  std::map<std::pair<double, double>, std::size_t> index;
  std::vector<GeoPoint> coords;
  std::vector<std::int64_t> counts;
  for (const RawCheckin& c : raw) {
    const auto key = std::make_pair(c.lat, c.lon);
    auto [it, inserted] = index.try_emplace(key, coords.size());
    if (inserted) {
      coords.push_back({c.lat, c.lon});
      counts.push_back(0);
    }
    ++counts[it->second];
  }
  if (k == 0 || k > coords.size()) {
    throw std::invalid_argument("top_k_points: k outside [1, distinct locations]");
  }
  std::vector<std::size_t> order(coords.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return a < b;
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  std::vector<GeoPoint> selected;
  for (std::size_t i : order) selected.push_back(coords[i]);
  return PointSet(std::move(selected));
}

// The k most-visited points of ps under the corpus, ties toward the lower id.
// Selected points keep their relative id order, so k = |ps| is the identity.
inline PointSet top_k_points(const std::vector<Trajectory>& corpus,
                             const PointSet& ps, std::size_t k) {
  if (k == 0 || k > ps.size()) {
    throw std::invalid_argument("top_k_points: k outside [1, |point set|]");
  }
  std::vector<std::int64_t> counts(ps.size(), 0);
  for (const Trajectory& t : corpus) {
    for (PointId id : t.point_ids) {
      if (id < 0 || static_cast<std::size_t>(id) >= ps.size()) {
        throw std::invalid_argument("top_k_points: corpus id outside point set");
      }
      ++counts[id];
    }
  }
  std::vector<PointId> order(ps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return a < b;
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  std::vector<GeoPoint> selected;
  for (PointId id : order) selected.push_back(ps.point(id));
  return PointSet(std::move(selected));
}

// Random-walk corpus: uniform start, successors uniform among the points
// within reach_bound_km of the current one (never the current point itself).
// Trajectory t draws from rng.child(t), so corpora are stable under
// per-trajectory parallel generation.
inline std::vector<Trajectory> generate_synthetic(const PointSet& ps,
                                                  const SynthConfig& cfg,
                                                  const RandomSource& rng) {
  if (cfg.length < 1) {
    throw std::invalid_argument("generate_synthetic: length must be at least 1");
  }
  if (!(cfg.reach_bound_km > 0.0)) {
    throw std::invalid_argument("generate_synthetic: reach bound must be positive");
  }
  if (ps.size() == 0) {
    throw std::invalid_argument("generate_synthetic: empty point set");
  }
  std::vector<std::vector<PointId>> neighbors(ps.size());
  bool any_neighbor = false;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (i == j) continue;
      if (ps.distance(static_cast<PointId>(i), static_cast<PointId>(j)) <=
          cfg.reach_bound_km) {
        neighbors[i].push_back(static_cast<PointId>(j));
      }
    }
    if (!neighbors[i].empty()) any_neighbor = true;
  }
  if (!any_neighbor) {
    throw std::invalid_argument(
        "generate_synthetic: no point has a neighbor within the reach bound");
  }
  constexpr int kStartRetries = 1000;
  std::vector<Trajectory> corpus;
  corpus.reserve(cfg.n_trajectories);
  for (std::size_t t = 0; t < cfg.n_trajectories; ++t) {
    RandomSource stream = rng.child(static_cast<std::uint64_t>(t));
    auto start = static_cast<PointId>(stream.uniform_int(ps.size()));
    int attempts = 0;
    while (cfg.length >= 2 && neighbors[start].empty()) {
      if (++attempts > kStartRetries) {
        throw std::runtime_error(
            "generate_synthetic: exhausted retries finding a connected start");
      }
      start = static_cast<PointId>(stream.uniform_int(ps.size()));
    }
    Trajectory traj;
    traj.point_ids.push_back(start);
    PointId cur = start;
    for (std::size_t step = 1; step < cfg.length; ++step) {
      const std::vector<PointId>& options = neighbors[cur];
      cur = options[stream.uniform_int(options.size())];
      traj.point_ids.push_back(cur);
    }
    corpus.push_back(std::move(traj));
  }
  return corpus;
}

}  // namespace trajldp

#endif  // TRAJLDP_DATASET_H_
