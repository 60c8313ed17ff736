#pragma once

#include <array>
#include <vector>

#include "agarl/world.hpp"

namespace agarl {

inline constexpr int kGridSide = 11;
inline constexpr int kGridCells = kGridSide * kGridSide;

/// Which vision grids the state encoding carries. The pellet grid is always
/// present; enemies and walls are added when training against other bots.
struct GridConfig {
  bool enemy = false;
  bool wall = false;

  int grid_count() const { return 1 + (enemy ? 1 : 0) + (wall ? 1 : 0); }
  int flat_dim() const { return kGridCells * grid_count() + 2; }
  bool operator==(const GridConfig&) const = default;
};

using Grid = std::array<double, kGridCells>;

struct VisionGrids {
  Grid pellet{};  // summed pellet mass per area
  Grid enemy{};   // mass of the biggest enemy cell per area
  Grid wall{};    // fraction of the area covered by wall
};

/// State encoding: the enabled grids in fixed order (pellet, enemy, wall,
/// row-major each) followed by two scalars (total mass, view size relative
/// to a single pellet).
struct Observation {
  VisionGrids grids;
  GridConfig config;
  double total_mass = 0.0;
  double relative_view_size = 0.0;

  std::vector<double> flatten() const;
};

/// Cuts the view square into 11x11 areas. Pellets and cells are assigned to
/// areas by their center point; entities outside the view are dropped. Ties
/// on exact boundaries go to the higher-index area.
VisionGrids build_vision_grids(const World& world, int player_id, const View& view);

Observation encode_state(const World& world, int player_id, const GridConfig& config);

/// Discrete action set: the n x n area centers of the unit square, row-major
/// with x varying fastest: ((2i+1)/(2n), (2j+1)/(2n)).
struct ActionGrid {
  int side = 0;
  std::vector<std::array<double, 2>> positions;
};

ActionGrid discretize_actions(int n);

/// Affine map of the unit square onto the view rectangle; components are
/// clamped into [0,1] first.
Vec2 action_to_world(const std::array<double, 2>& action01, const View& view);

}  // namespace agarl
