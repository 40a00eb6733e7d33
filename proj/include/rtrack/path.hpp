#ifndef RTRACK_PATH_HPP_
#define RTRACK_PATH_HPP_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "rtrack/csv.hpp"
#include "rtrack/errors.hpp"
#include "rtrack/geometry.hpp"

namespace rtrack {

struct Waypoint {
  Vec2 position;
  double target_speed = 0.0;    // m/s
  double target_heading = 0.0;  // rad, carried through files but not tracked
};

/// Ordered waypoint list with at least two entries and no zero-length segments.
class Path {
 public:
  Path() = default;

  explicit Path(std::vector<Waypoint> waypoints) : waypoints_(std::move(waypoints)) {
    if (waypoints_.size() < 2) throw InvalidArgument("invalid path: need at least 2 waypoints");
    arc_.assign(waypoints_.size(), 0.0);
    for (std::size_t i = 0; i < waypoints_.size(); ++i) {
      const auto& w = waypoints_[i];
      if (!std::isfinite(w.position.x) || !std::isfinite(w.position.y) || !std::isfinite(w.target_speed)) {
        throw InvalidArgument("invalid path: waypoint " + std::to_string(i) + " is not finite");
      }
      if (w.target_speed < 0.0) {
        throw InvalidArgument("invalid path: waypoint " + std::to_string(i) + " has negative target speed");
      }
      if (i > 0) {
        const double len = (w.position - waypoints_[i - 1].position).norm();
        if (!(len > 0.0)) {
          throw InvalidArgument("invalid path: waypoints " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                " coincide");
        }
        arc_[i] = arc_[i - 1] + len;
      }
    }
  }

  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  std::size_t size() const { return waypoints_.size(); }
  std::size_t segment_count() const { return waypoints_.empty() ? 0 : waypoints_.size() - 1; }
  const Waypoint& operator[](std::size_t i) const { return waypoints_[i]; }
  const Waypoint& back() const { return waypoints_.back(); }

  /// Cumulative polyline length from the first waypoint to waypoint i.
  double arc_length(std::size_t i) const { return arc_[i]; }
  double length() const { return arc_.empty() ? 0.0 : arc_.back(); }

  /// Point on the polyline at arc length s, clamped to [0, length()].
  Vec2 point_at(double s) const {
    if (s <= 0.0) return waypoints_.front().position;
    if (s >= length()) return waypoints_.back().position;
    const auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
    const std::size_t j = static_cast<std::size_t>(it - arc_.begin());  // arc_[j-1] <= s < arc_[j]
    const double f = (s - arc_[j - 1]) / (arc_[j] - arc_[j - 1]);
    const Vec2 a = waypoints_[j - 1].position;
    return a + (waypoints_[j].position - a) * f;
  }

  /// Throws when any target speed exceeds the vehicle's top speed.
  void check_speed_limit(double v_max) const {
    for (std::size_t i = 0; i < waypoints_.size(); ++i) {
      if (waypoints_[i].target_speed > v_max) {
        throw InvalidArgument("invalid path: waypoint " + std::to_string(i) + " target speed " +
                              csv::format_double(waypoints_[i].target_speed) + " exceeds v_max " +
                              csv::format_double(v_max));
      }
    }
  }

 private:
  std::vector<Waypoint> waypoints_;
  std::vector<double> arc_;
};

struct SegmentDistance {
  double signed_distance = 0.0;  // positive when the point is left of a->b
  double fraction = 0.0;         // projection parameter clamped to [0, 1]
};

/// Distance from `p` to the segment a-b. Beyond the ends the distance is to the
/// nearest endpoint; the sign always follows the side of the line a->b.
inline SegmentDistance distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (!(len2 > 0.0)) throw InvalidArgument("degenerate segment: endpoints coincide");
  const Vec2 ap = p - a;
  const double t = std::clamp(ap.dot(ab) / len2, 0.0, 1.0);
  const double dist = (p - (a + ab * t)).norm();
  const double side = ab.cross(ap);
  return {side < 0.0 ? -dist : dist, t};
}

struct ReferenceSegment {
  std::size_t k = 0;  // segment connects waypoints k and k+1
  Vec2 start;
  Vec2 end;
  double cross_track_error = 0.0;
};

/// Monotone reference segment selection.
///
/// Candidates are segment `previous_k` plus every later segment whose start
/// waypoint lies within `lookahead` metres of path length past the end of
/// segment `previous_k`. The candidate nearest to `position` wins, ties going
/// to the lower index, so k never decreases and the vehicle cannot jump to a
/// far-away part of a self-intersecting path.
inline ReferenceSegment select_reference_segment(const Path& path, const Vec2& position, std::size_t previous_k,
                                                 double lookahead) {
  if (path.size() < 2) throw InvalidArgument("invalid path: need at least 2 waypoints");
  if (previous_k >= path.segment_count()) {
    throw InvalidArgument("previous segment index " + std::to_string(previous_k) + " out of range");
  }
  const double horizon = path.arc_length(previous_k + 1) + lookahead;
  std::size_t best = previous_k;
  SegmentDistance best_d = distance_to_segment(position, path[previous_k].position, path[previous_k + 1].position);
  for (std::size_t j = previous_k + 1; j < path.segment_count() && path.arc_length(j) <= horizon; ++j) {
    const auto d = distance_to_segment(position, path[j].position, path[j + 1].position);
    if (std::abs(d.signed_distance) < std::abs(best_d.signed_distance)) {
      best = j;
      best_d = d;
    }
  }
  return {best, path[best].position, path[best + 1].position, best_d.signed_distance};
}

/// Target speed profile used along the benchmark figure-8, v(t) = 2 + cos^2(2t).
inline double figure8_speed(double t) {
  const double c = std::cos(2.0 * t);
  return 2.0 + c * c;
}

inline Vec2 figure8_point(double t) {
  return {40.0 + 20.0 * std::cos(t), 22.5 + 20.0 * std::sin(t) * std::cos(t)};
}

/// Benchmark figure-8 sampled at `n_waypoints` uniformly spaced t in [-pi, pi].
inline Path generate_figure8(int n_waypoints = 100) {
  if (n_waypoints < 8) throw InvalidArgument("figure-8 needs at least 8 waypoints");
  constexpr double kPi = std::numbers::pi;
  std::vector<Waypoint> wps;
  wps.reserve(static_cast<std::size_t>(n_waypoints));
  for (int i = 0; i < n_waypoints; ++i) {
    const double t = -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_waypoints - 1);
    const double dx = -20.0 * std::sin(t);
    const double dy = 20.0 * std::cos(2.0 * t);
    wps.push_back({figure8_point(t), figure8_speed(t), std::atan2(dy, dx)});
  }
  return Path(std::move(wps));
}

inline Path read_path_csv(const std::string& file) {
  const auto table = csv::read_file(file);
  csv::expect_header(table, {"x", "y", "v", "theta"}, file);
  std::vector<Waypoint> wps;
  for (const auto& row : table.rows) {
    if (row.fields.size() != 4) {
      throw LoadError(file + ": row at line " + std::to_string(row.line) + ": expected 4 fields");
    }
    wps.push_back({{csv::to_double(row.fields[0], row, "x", file), csv::to_double(row.fields[1], row, "y", file)},
                   csv::to_double(row.fields[2], row, "v", file),
                   csv::to_double(row.fields[3], row, "theta", file)});
  }
  try {
    return Path(std::move(wps));
  } catch (const InvalidArgument& e) {
    throw LoadError(file + ": " + e.what());
  }
}

inline void write_path_csv(const Path& path, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw LoadError(file + ": cannot open for writing");
  out << "x,y,v,theta\n";
  for (const auto& w : path.waypoints()) {
    out << csv::format_double(w.position.x) << ',' << csv::format_double(w.position.y) << ','
        << csv::format_double(w.target_speed) << ',' << csv::format_double(w.target_heading) << '\n';
  }
}

}  // namespace rtrack

#endif  // RTRACK_PATH_HPP_
