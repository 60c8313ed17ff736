#include "agarl/percept.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "agarl/errors.hpp"

namespace agarl {

namespace {

// Index of the area containing coordinate v, or -1 when outside [lo, lo+2h).
int area_index(double v, double lo, double cell_size) {
  const double offset = v - lo;
  if (offset < 0.0) return -1;
  const int idx = static_cast<int>(std::floor(offset / cell_size));
  return idx < kGridSide ? idx : -1;
}

}  // namespace

VisionGrids build_vision_grids(const World& world, int player_id, const View& view) {
  VisionGrids grids;
  const double lo_x = view.center.x - view.half_width;
  const double lo_y = view.center.y - view.half_width;
  const double cell = 2.0 * view.half_width / kGridSide;

  for (const Pellet& p : world.pellets()) {
    const int col = area_index(p.pos.x, lo_x, cell);
    const int row = area_index(p.pos.y, lo_y, cell);
    if (col >= 0 && row >= 0) grids.pellet[row * kGridSide + col] += p.mass;
  }

  for (const Player& other : world.players()) {
    if (other.id == player_id || !other.alive) continue;
    const int col = area_index(other.pos.x, lo_x, cell);
    const int row = area_index(other.pos.y, lo_y, cell);
    if (col >= 0 && row >= 0) {
      double& slot = grids.enemy[row * kGridSide + col];
      slot = std::max(slot, other.mass);
    }
  }

  // Wall grid: fraction of each area lying outside the map rectangle.
  const double side = world.config().map_side;
  for (int row = 0; row < kGridSide; ++row) {
    const double y0 = lo_y + row * cell;
    const double oy = std::max(0.0, std::min(y0 + cell, side) - std::max(y0, 0.0));
    for (int col = 0; col < kGridSide; ++col) {
      const double x0 = lo_x + col * cell;
      const double ox = std::max(0.0, std::min(x0 + cell, side) - std::max(x0, 0.0));
      grids.wall[row * kGridSide + col] = 1.0 - (ox * oy) / (cell * cell);
    }
  }
  return grids;
}

Observation encode_state(const World& world, int player_id, const GridConfig& config) {
  Observation obs;
  obs.config = config;
  const View view = world.fov(player_id);
  obs.grids = build_vision_grids(world, player_id, view);
  obs.total_mass = world.players().at(player_id).mass;
  const double view_area = (2.0 * view.half_width) * (2.0 * view.half_width);
  const double pellet_area =
      std::numbers::pi * world.config().pellet_mass;  // disc area of one pellet, r = sqrt(m)
  obs.relative_view_size = view_area / pellet_area;
  return obs;
}

std::vector<double> Observation::flatten() const {
  std::vector<double> flat;
  flat.reserve(config.flat_dim());
  flat.insert(flat.end(), grids.pellet.begin(), grids.pellet.end());
  if (config.enemy) flat.insert(flat.end(), grids.enemy.begin(), grids.enemy.end());
  if (config.wall) flat.insert(flat.end(), grids.wall.begin(), grids.wall.end());
  flat.push_back(total_mass);
  flat.push_back(relative_view_size);
  return flat;
}

ActionGrid discretize_actions(int n) {
  if (n < 1) throw param_error("action grid side must be at least 1");
  ActionGrid grid;
  grid.side = n;
  grid.positions.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      grid.positions.push_back({(2.0 * i + 1.0) / (2.0 * n), (2.0 * j + 1.0) / (2.0 * n)});
  return grid;
}

Vec2 action_to_world(const std::array<double, 2>& action01, const View& view) {
  const double ax = std::clamp(action01[0], 0.0, 1.0);
  const double ay = std::clamp(action01[1], 0.0, 1.0);
  return {view.center.x - view.half_width + ax * 2.0 * view.half_width,
          view.center.y - view.half_width + ay * 2.0 * view.half_width};
}

}  // namespace agarl
