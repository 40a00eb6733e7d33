#ifndef RTRACK_KPI_HPP_
#define RTRACK_KPI_HPP_

// Validation KPIs over recorded episodes.
//
// A trace holds rows k = 0..N where row 0 is the reset observation. The mean
// KPIs (kappa2, kappa_danger) average over k = 1..N; kappa_dist takes the
// minimum over k = 0..N.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "rtrack/csv.hpp"
#include "rtrack/env.hpp"
#include "rtrack/errors.hpp"
#include "rtrack/path.hpp"
#include "rtrack/random.hpp"

namespace rtrack {

struct TraceRow {
  double t = 0.0;
  VehicleState state;  // prev_control holds the control applied in this step
  Observation obs;
};

struct EpisodeTrace {
  std::vector<TraceRow> rows;
  Termination cause = Termination::kNone;

  /// Number of steps after reset (N).
  std::size_t steps() const { return rows.empty() ? 0 : rows.size() - 1; }
};

namespace detail {
inline void require_steps(const EpisodeTrace& trace, const char* kpi) {
  if (trace.steps() < 1) throw InvalidArgument(std::string(kpi) + ": trace needs at least one step after reset");
}
}  // namespace detail

/// Mean squared (clipped cross-track error, speed error) norm.
inline double kappa2(const EpisodeTrace& trace) {
  detail::require_steps(trace, "kappa2");
  double sum = 0.0;
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    const auto& o = trace.rows[k].obs;
    sum += o.cross_track * o.cross_track + o.speed_error * o.speed_error;
  }
  return sum / static_cast<double>(trace.steps());
}

/// Fraction of checkpoints reached in order. A single cursor walks the trace;
/// an unreached checkpoint blocks all later ones.
inline double kappa_reach(const EpisodeTrace& trace, const std::vector<Vec2>& checkpoints, double tolerance) {
  if (checkpoints.empty()) throw InvalidArgument("kappa_reach: need at least one checkpoint");
  std::size_t cursor = 0;
  for (const auto& row : trace.rows) {
    while (cursor < checkpoints.size() && (row.state.position - checkpoints[cursor]).norm() <= tolerance) ++cursor;
    if (cursor == checkpoints.size()) break;
  }
  return static_cast<double>(cursor) / static_cast<double>(checkpoints.size());
}

/// Smallest sensed obstacle distance over the episode.
inline double kappa_dist(const EpisodeTrace& trace) {
  detail::require_steps(trace, "kappa_dist");
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : trace.rows) m = std::min(m, row.obs.obstacle_distance);
  return m;
}

/// Share of steps with an obstacle within half the sensing range.
inline double kappa_danger(const EpisodeTrace& trace, double rho1, double rho2) {
  detail::require_steps(trace, "kappa_danger");
  const double threshold = 0.5 * (rho2 - rho1);
  std::size_t count = 0;
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    if (trace.rows[k].obs.obstacle_distance <= threshold) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(trace.steps());
}

/// `count` points uniform in arc length along the path, ordered start to end.
inline std::vector<Vec2> sample_checkpoints(const Path& path, int count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("need at least one checkpoint");
  Rng rng(seed);
  std::vector<double> s(static_cast<std::size_t>(count));
  for (auto& v : s) v = uniform(rng, 0.0, path.length());
  std::sort(s.begin(), s.end());
  std::vector<Vec2> pts;
  pts.reserve(s.size());
  for (double v : s) pts.push_back(path.point_at(v));
  return pts;
}

struct KpiValues {
  double kappa2 = 0.0;
  double kappa_reach = 0.0;
  double kappa_dist = 0.0;
  double kappa_danger = 0.0;
};

inline KpiValues compute_kpis(const EpisodeTrace& trace, const std::vector<Vec2>& checkpoints, double tolerance,
                              double rho1, double rho2) {
  return {kappa2(trace), kappa_reach(trace, checkpoints, tolerance), kappa_dist(trace),
          kappa_danger(trace, rho1, rho2)};
}

// Trace CSV: t,x,y,theta,v,u1,u2,x1,...,x7

inline const std::vector<std::string>& trace_header() {
  static const std::vector<std::string> h{"t", "x", "y", "theta", "v", "u1", "u2", "x1", "x2",
                                          "x3", "x4", "x5", "x6", "x7"};
  return h;
}

inline void write_trace_csv(const EpisodeTrace& trace, const std::string& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw LoadError(file + ": cannot open for writing");
  const auto& h = trace_header();
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
  for (const auto& r : trace.rows) {
    out << csv::format_double(r.t) << ',' << csv::format_double(r.state.position.x) << ','
        << csv::format_double(r.state.position.y) << ',' << csv::format_double(r.state.heading) << ','
        << csv::format_double(r.state.speed) << ',' << csv::format_double(r.state.prev_control.accel) << ','
        << csv::format_double(r.state.prev_control.steer);
    for (double v : r.obs.values()) out << ',' << csv::format_double(v);
    out << '\n';
  }
}

inline EpisodeTrace read_trace_csv(const std::string& file) {
  const auto table = csv::read_file(file);
  csv::expect_header(table, trace_header(), file);
  EpisodeTrace trace;
  const auto& h = trace_header();
  for (const auto& row : table.rows) {
    if (row.fields.size() != h.size()) {
      throw LoadError(file + ": row at line " + std::to_string(row.line) + ": expected " + std::to_string(h.size()) +
                      " fields");
    }
    double v[14];
    for (std::size_t i = 0; i < h.size(); ++i) v[i] = csv::to_double(row.fields[i], row, h[i], file);
    TraceRow r;
    r.t = v[0];
    r.state.position = {v[1], v[2]};
    r.state.heading = v[3];
    r.state.speed = v[4];
    r.state.prev_control = {v[5], v[6]};
    r.obs = Observation::from({v[7], v[8], v[9], v[10], v[11], v[12], v[13]});
    trace.rows.push_back(r);
  }
  return trace;
}

}  // namespace rtrack

#endif  // RTRACK_KPI_HPP_
