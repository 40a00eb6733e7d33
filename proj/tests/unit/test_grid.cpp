#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "oracles.hpp"
#include "rtrack/grid.hpp"

using namespace rtrack;

namespace {

GridSpec spec64(Vec2 origin = {0, 0}) {
  GridSpec s;
  s.resolution = 0.25;
  s.width = 64;
  s.height = 64;
  s.origin = origin;
  return s;
}

}  // namespace

TEST(Rasterize, EmptyListIsFree) {
  const auto g = rasterize_obstacles({}, spec64());
  EXPECT_EQ(g.occupied_count(), 0u);
}

TEST(Rasterize, SmallCircleOnCellCenterHitsOneCell) {
  const auto s = spec64();
  OccupancyGrid probe(s);
  const Vec2 c = probe.cell_center(10, 20);
  const auto g = rasterize_obstacles({Circle{c, 0.5 * s.resolution}}, s);
  EXPECT_EQ(g.occupied_count(), 1u);
  EXPECT_TRUE(g.occupied(10, 20));
}

TEST(Rasterize, FullRectangle) {
  const auto g = rasterize_obstacles({Rect{{8, 8}, 100, 100}}, spec64());
  EXPECT_EQ(g.occupied_count(), 64u * 64u);
}

TEST(Rasterize, MatchesPerCellContainment) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Obstacle> obs;
    for (int i = 0; i < 4; ++i) {
      if (uniform01(rng) < 0.5) {
        obs.push_back(Circle{{uniform(rng, -2, 18), uniform(rng, -2, 18)}, uniform(rng, 0.1, 3)});
      } else {
        obs.push_back(Rect{{uniform(rng, -2, 18), uniform(rng, -2, 18)}, uniform(rng, 0.1, 4), uniform(rng, 0.1, 4)});
      }
    }
    const auto g = rasterize_obstacles(obs, spec64());
    for (int iy = 0; iy < 64; ++iy) {
      for (int ix = 0; ix < 64; ++ix) {
        const double cx = (ix + 0.5) * 0.25, cy = (iy + 0.5) * 0.25;
        bool inside = false;
        for (const auto& o : obs) {
          if (const auto* c = std::get_if<Circle>(&o)) {
            inside |= (cx - c->center.x) * (cx - c->center.x) + (cy - c->center.y) * (cy - c->center.y) <=
                      c->radius * c->radius;
          } else {
            const auto& r = std::get<Rect>(o);
            inside |= std::abs(cx - r.center.x) <= r.width / 2 && std::abs(cy - r.center.y) <= r.height / 2;
          }
        }
        ASSERT_EQ(g.occupied(ix, iy), inside) << ix << "," << iy;
      }
    }
  }
}

TEST(Rasterize, RejectsNonPositiveDimensions) {
  EXPECT_THROW(rasterize_obstacles({Circle{{0, 0}, 0.0}}, spec64()), InvalidArgument);
  EXPECT_THROW(rasterize_obstacles({Rect{{0, 0}, 1.0, -1.0}}, spec64()), InvalidArgument);
}

TEST(OccupancyGridTest, OutsideIsFree) {
  OccupancyGrid g(spec64());
  g.set(0, 0, true);
  EXPECT_TRUE(g.occupied_at({0.1, 0.1}));
  EXPECT_FALSE(g.occupied_at({-0.1, 0.1}));
  EXPECT_FALSE(g.occupied(-1, 0));
  EXPECT_FALSE(g.occupied(64, 0));
  EXPECT_THROW(g.set(64, 0, true), InvalidArgument);
}

TEST(CenteredGridSpec, SnapsOriginAndCoversWindow) {
  const auto s = centered_grid_spec({10.13, -3.4}, 16.0, 0.25);
  EXPECT_EQ(s.width, 64);
  EXPECT_EQ(s.height, 64);
  EXPECT_DOUBLE_EQ(std::fmod(s.origin.x, 0.25), 0.0);
  EXPECT_LE(s.origin.x, 10.13 - 7.75);
  EXPECT_GE(s.origin.x + 16.0, 10.13 + 7.75);
}

TEST(CastRays, FreeGridGivesMaxDistance) {
  const RayConfig cfg;
  const auto scan = cast_rays(OccupancyGrid(spec64()), {8, 8}, 0.3, cfg);
  ASSERT_EQ(scan.distances.size(), 15u);
  for (double d : scan.distances) EXPECT_EQ(d, 4.0);
  EXPECT_DOUBLE_EQ(scan.ray_angles.front(), -2.0 * std::numbers::pi / 3.0);
  EXPECT_DOUBLE_EQ(scan.ray_angles.back(), 2.0 * std::numbers::pi / 3.0);
  EXPECT_NEAR(scan.ray_angles[7], 0.0, 1e-15);
}

TEST(CastRays, OccupiedCellOnRayZero) {
  const RayConfig cfg;
  OccupancyGrid g(spec64());
  const Vec2 com{8.0, 8.0};
  const double heading = 0.0;
  const Vec2 dir = unit_vector(heading + cfg.ray_angle(0));
  const Vec2 p = com + dir * 2.5;
  g.set(static_cast<int>(std::floor(p.x / 0.25)), static_cast<int>(std::floor(p.y / 0.25)), true);
  const auto scan = cast_rays(g, com, heading, cfg);
  EXPECT_NEAR(scan.distances[0], 1.5, cfg.node_spacing());
  for (std::size_t i = 1; i < scan.distances.size(); ++i) EXPECT_EQ(scan.distances[i], 4.0);
}

TEST(CastRays, InsideDiskIgnored) {
  OccupancyGrid g(spec64());
  const Vec2 com{8.0, 8.0};
  // occupy everything within 0.5 m of the centre
  for (int iy = 0; iy < 64; ++iy) {
    for (int ix = 0; ix < 64; ++ix) {
      if ((g.cell_center(ix, iy) - com).norm() <= 0.5) g.set(ix, iy, true);
    }
  }
  const auto scan = cast_rays(g, com, 1.0, RayConfig{});
  for (double d : scan.distances) EXPECT_EQ(d, 4.0);
}

TEST(CastRays, MatchesExhaustiveOracle) {
  Rng rng(17);
  const RayConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_grid(rng);
    const Vec2 com{g.origin().x + uniform(rng, 2, 14), g.origin().y + uniform(rng, 2, 14)};
    const double heading = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const auto scan = cast_rays(g, com, heading, cfg);
    const auto expect = oracle::ray_distances(g, com, heading, 15, 17, 1.0, 5.0, cfg.half_span);
    ASSERT_EQ(scan.distances, expect);
  }
}

TEST(CastRays, AddingCellsNeverIncreasesDistance) {
  Rng rng(23);
  const RayConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    auto g = oracle::random_grid(rng);
    const Vec2 com{g.origin().x + 8, g.origin().y + 8};
    const auto before = cast_rays(g, com, 0.7, cfg);
    for (int k = 0; k < 30; ++k) g.set(static_cast<int>(uniform_index(rng, 64)), static_cast<int>(uniform_index(rng, 64)), true);
    const auto after = cast_rays(g, com, 0.7, cfg);
    for (std::size_t i = 0; i < before.distances.size(); ++i) EXPECT_LE(after.distances[i], before.distances[i]);
  }
}

TEST(CastRays, DistancesQuantisedToNodes) {
  Rng rng(29);
  const RayConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_grid(rng);
    const auto scan = cast_rays(g, {g.origin().x + 8, g.origin().y + 8}, 0.0, cfg);
    for (double d : scan.distances) {
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 4.0);
      const double nodes = (d + 1.0) / cfg.node_spacing();
      EXPECT_NEAR(nodes, std::round(nodes), 1e-9);
    }
  }
}

TEST(CastRays, ArgminTiesToLowestIndex) {
  RangeScan s;
  s.distances = {3.0, 1.0, 1.0, 2.0};
  EXPECT_EQ(s.argmin(), 1u);
}

TEST(RayConfigTest, Validation) {
  RayConfig c;
  c.inner_radius = 5.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = RayConfig{};
  c.rays = 2;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = RayConfig{};
  c.nodes = 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(ObstacleCsv, RoundTrip) {
  const auto file = std::filesystem::temp_directory_path() / "rtrack_obstacles.csv";
  const std::vector<Obstacle> obs{Circle{{1.5, 2.25}, 0.75}, Rect{{-3, 4}, 2, 0.5}};
  write_obstacles_csv(obs, file.string());
  const auto back = read_obstacles_csv(file.string());
  ASSERT_EQ(back.size(), 2u);
  const auto& c = std::get<Circle>(back[0]);
  EXPECT_EQ(c.center, (Vec2{1.5, 2.25}));
  EXPECT_EQ(c.radius, 0.75);
  const auto& r = std::get<Rect>(back[1]);
  EXPECT_EQ(r.width, 2.0);
  EXPECT_EQ(r.height, 0.5);
}

TEST(ObstacleCsv, Errors) {
  const auto file = std::filesystem::temp_directory_path() / "rtrack_obstacles_bad.csv";
  std::ofstream(file) << "shape,cx,cy,r_or_w,h\ntriangle,0,0,1,0\n";
  EXPECT_THROW(read_obstacles_csv(file.string()), LoadError);
  std::ofstream(file) << "shape,cx,cy,r_or_w,h\ncircle,0,0,-1,0\n";
  EXPECT_THROW(read_obstacles_csv(file.string()), LoadError);
  std::ofstream(file) << "shape,cx,cy,r_or_w,h\n";
  EXPECT_TRUE(read_obstacles_csv(file.string()).empty());
}
