#ifndef RTRACK_GRID_HPP_
#define RTRACK_GRID_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "rtrack/csv.hpp"
#include "rtrack/errors.hpp"
#include "rtrack/geometry.hpp"

namespace rtrack {

struct GridSpec {
  double resolution = 0.25;  // m per cell
  int width = 64;
  int height = 64;
  Vec2 origin;  // world position of the lower-left grid corner
};

/// Binary occupancy map. Queries outside the grid report free.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;

  explicit OccupancyGrid(const GridSpec& spec) : spec_(spec) {
    if (!(spec.resolution > 0.0) || spec.width <= 0 || spec.height <= 0) {
      throw InvalidArgument("grid spec: resolution and dimensions must be positive");
    }
    cells_.assign(static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height), 0);
  }

  const GridSpec& spec() const { return spec_; }
  double resolution() const { return spec_.resolution; }
  int width() const { return spec_.width; }
  int height() const { return spec_.height; }
  const Vec2& origin() const { return spec_.origin; }
  std::size_t cell_count() const { return cells_.size(); }

  bool occupied(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= spec_.width || iy >= spec_.height) return false;
    return cells_[index(ix, iy)] != 0;
  }

  bool occupied_at(const Vec2& p) const {
    const double fx = std::floor((p.x - spec_.origin.x) / spec_.resolution);
    const double fy = std::floor((p.y - spec_.origin.y) / spec_.resolution);
    if (!(fx >= 0.0 && fy >= 0.0 && fx < spec_.width && fy < spec_.height)) return false;
    return occupied(static_cast<int>(fx), static_cast<int>(fy));
  }

  void set(int ix, int iy, bool value) {
    if (ix < 0 || iy < 0 || ix >= spec_.width || iy >= spec_.height) {
      throw InvalidArgument("grid cell (" + std::to_string(ix) + ", " + std::to_string(iy) + ") out of range");
    }
    cells_[index(ix, iy)] = value ? 1 : 0;
  }

  Vec2 cell_center(int ix, int iy) const {
    return {spec_.origin.x + (ix + 0.5) * spec_.resolution, spec_.origin.y + (iy + 0.5) * spec_.resolution};
  }

  std::size_t occupied_count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
  }

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec_.width) + static_cast<std::size_t>(ix);
  }

  GridSpec spec_;
  std::vector<std::uint8_t> cells_;
};

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Axis-aligned rectangle given by its center and full extents.
struct Rect {
  Vec2 center;
  double width = 0.0;
  double height = 0.0;
};

using Obstacle = std::variant<Circle, Rect>;

inline bool contains(const Obstacle& obstacle, const Vec2& p) {
  return std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Circle>) {
          const Vec2 d = p - o.center;
          return d.dot(d) <= o.radius * o.radius;
        } else {
          return std::abs(p.x - o.center.x) <= 0.5 * o.width && std::abs(p.y - o.center.y) <= 0.5 * o.height;
        }
      },
      obstacle);
}

inline void validate_obstacle(const Obstacle& obstacle) {
  std::visit(
      [](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Circle>) {
          if (!(o.radius > 0.0)) throw InvalidArgument("circle obstacle radius must be positive");
        } else {
          if (!(o.width > 0.0) || !(o.height > 0.0)) {
            throw InvalidArgument("rect obstacle width and height must be positive");
          }
        }
      },
      obstacle);
}

/// A cell is occupied iff its center lies inside any obstacle.
inline OccupancyGrid rasterize_obstacles(const std::vector<Obstacle>& obstacles, const GridSpec& spec) {
  OccupancyGrid grid(spec);
  for (const auto& obstacle : obstacles) {
    validate_obstacle(obstacle);
    // Bounding box in cell indices; containment is still tested per cell center.
    const auto [lo, hi] = std::visit(
        [](const auto& o) -> std::pair<Vec2, Vec2> {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Circle>) {
            return {o.center - Vec2{o.radius, o.radius}, o.center + Vec2{o.radius, o.radius}};
          } else {
            const Vec2 half{0.5 * o.width, 0.5 * o.height};
            return {o.center - half, o.center + half};
          }
        },
        obstacle);
    const double res = spec.resolution;
    const int ix0 = std::max(0, static_cast<int>(std::floor((lo.x - spec.origin.x) / res)) - 1);
    const int iy0 = std::max(0, static_cast<int>(std::floor((lo.y - spec.origin.y) / res)) - 1);
    const int ix1 = std::min(spec.width - 1, static_cast<int>(std::ceil((hi.x - spec.origin.x) / res)) + 1);
    const int iy1 = std::min(spec.height - 1, static_cast<int>(std::ceil((hi.y - spec.origin.y) / res)) + 1);
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        if (contains(obstacle, grid.cell_center(ix, iy))) grid.set(ix, iy, true);
      }
    }
  }
  return grid;
}

/// Grid spec of a `window` x `window` map around `center`. The origin is
/// snapped to multiples of the resolution so that a static obstacle set
/// rasterizes identically from step to step.
inline GridSpec centered_grid_spec(const Vec2& center, double window = 16.0, double resolution = 0.25) {
  if (!(window > 0.0) || !(resolution > 0.0)) throw InvalidArgument("grid window and resolution must be positive");
  GridSpec spec;
  spec.resolution = resolution;
  spec.width = static_cast<int>(std::ceil(window / resolution - 1e-9));
  spec.height = spec.width;
  spec.origin = {std::floor((center.x - 0.5 * window) / resolution) * resolution,
                 std::floor((center.y - 0.5 * window) / resolution) * resolution};
  return spec;
}

struct RayConfig {
  int rays = 15;        // m
  int nodes = 17;       // n, evenly spaced on [0, outer_radius] including both ends
  double inner_radius = 1.0;  // rho1, radius of the disk containing the vehicle
  double outer_radius = 5.0;  // rho2, sensing range
  double half_span = 2.0 * std::numbers::pi / 3.0;  // rays cover [-half_span, +half_span]

  double max_distance() const { return outer_radius - inner_radius; }
  double node_spacing() const { return outer_radius / (nodes - 1); }
  double ray_angle(int i) const { return -half_span + 2.0 * half_span * i / (rays - 1); }

  void validate() const {
    if (!(inner_radius > 0.0) || !(outer_radius > inner_radius)) {
      throw InvalidArgument("ray config: need 0 < inner_radius < outer_radius");
    }
    if (rays < 3) throw InvalidArgument("ray config: need at least 3 rays");
    if (nodes < 2) throw InvalidArgument("ray config: need at least 2 nodes per ray");
    if (!(half_span >= 0.0) || half_span > std::numbers::pi) throw InvalidArgument("ray config: half_span out of range");
  }
};

struct RangeScan {
  std::vector<double> distances;   // each in [0, rho2 - rho1]
  std::vector<double> ray_angles;  // vehicle frame

  /// Index of the smallest distance; ties go to the lowest index.
  std::size_t argmin() const {
    return static_cast<std::size_t>(std::min_element(distances.begin(), distances.end()) - distances.begin());
  }
};

/// Range finding by ray casting from the center of mass. Nodes inside the
/// vehicle disk (radial distance <= inner_radius) are ignored; the reported
/// distance is measured from the disk boundary.
inline RangeScan cast_rays(const OccupancyGrid& grid, const Vec2& com, double heading, const RayConfig& cfg) {
  cfg.validate();
  RangeScan scan;
  scan.distances.resize(static_cast<std::size_t>(cfg.rays));
  scan.ray_angles.resize(static_cast<std::size_t>(cfg.rays));
  for (int i = 0; i < cfg.rays; ++i) {
    const double angle = cfg.ray_angle(i);
    const Vec2 dir = unit_vector(heading + angle);
    double d = cfg.max_distance();
    for (int j = 0; j < cfg.nodes; ++j) {
      const double r = cfg.outer_radius * j / (cfg.nodes - 1);
      if (r <= cfg.inner_radius) continue;
      if (grid.occupied_at(com + dir * r)) {
        d = r - cfg.inner_radius;
        break;
      }
    }
    scan.distances[static_cast<std::size_t>(i)] = d;
    scan.ray_angles[static_cast<std::size_t>(i)] = angle;
  }
  return scan;
}

inline std::vector<Obstacle> read_obstacles_csv(const std::string& file) {
  const auto table = csv::read_file(file);
  csv::expect_header(table, {"shape", "cx", "cy", "r_or_w", "h"}, file);
  std::vector<Obstacle> out;
  for (const auto& row : table.rows) {
    const auto where = file + ": row at line " + std::to_string(row.line);
    if (row.fields.size() != 5) throw LoadError(where + ": expected 5 fields");
    const Vec2 c{csv::to_double(row.fields[1], row, "cx", file), csv::to_double(row.fields[2], row, "cy", file)};
    const double a = csv::to_double(row.fields[3], row, "r_or_w", file);
    Obstacle o;
    if (row.fields[0] == "circle") {
      o = Circle{c, a};
    } else if (row.fields[0] == "rect") {
      o = Rect{c, a, csv::to_double(row.fields[4], row, "h", file)};
    } else {
      throw LoadError(where + ": unknown shape '" + row.fields[0] + "'");
    }
    try {
      validate_obstacle(o);
    } catch (const InvalidArgument& e) {
      throw LoadError(where + ": " + e.what());
    }
    out.push_back(o);
  }
  return out;
}

inline void write_obstacles_csv(const std::vector<Obstacle>& obstacles, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw LoadError(file + ": cannot open for writing");
  out << "shape,cx,cy,r_or_w,h\n";
  for (const auto& ob : obstacles) {
    if (const auto* c = std::get_if<Circle>(&ob)) {
      out << "circle," << csv::format_double(c->center.x) << ',' << csv::format_double(c->center.y) << ','
          << csv::format_double(c->radius) << ",0\n";
    } else {
      const auto& r = std::get<Rect>(ob);
      out << "rect," << csv::format_double(r.center.x) << ',' << csv::format_double(r.center.y) << ','
          << csv::format_double(r.width) << ',' << csv::format_double(r.height) << '\n';
    }
  }
}

}  // namespace rtrack

#endif  // RTRACK_GRID_HPP_
