#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <iosfwd>
#include <vector>

#include "agarl/rng.hpp"

namespace agarl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Square view window, axis aligned.
struct View {
  Vec2 center;
  double half_width = 0.0;
};

struct WorldConfig {
  double map_side = 400.0;
  double pellet_mass = 1.0;
  double map_units_per_pellet = 400.0;  // one pellet per this much area
  double mass_decay_per_step = 0.0005;
  double absorption_threshold = 1.25;  // eater mass must be >= threshold * prey mass
  double spawn_mass = 10.0;
  double speed_at_spawn = 4.0;    // map units per game step at spawn mass
  double speed_exponent = -0.4;   // speed = speed_at_spawn * (m / spawn_mass)^exponent
  double fov_base = 30.0;         // half width = fov_base + fov_scale * sqrt(mass)
  double fov_scale = 6.0;

  std::size_t pellet_target() const {
    return static_cast<std::size_t>(map_side * map_side / map_units_per_pellet);
  }
};

/// One player-controlled cell. Splitting is disabled, so player == cell.
struct Player {
  int id = 0;
  Vec2 pos;
  double mass = 10.0;
  Vec2 mouse_target;
  bool alive = true;
  bool died_this_step = false;
  double mass_at_previous_step = 10.0;
};

struct Pellet {
  Vec2 pos;
  double mass = 1.0;
};

struct StepEvents {
  struct CellEaten {
    int eater;
    int victim;
    double victim_mass;
  };
  std::vector<double> pellet_mass_eaten;  // per player
  std::vector<CellEaten> cells_eaten;
  std::vector<int> deaths;
};

double cell_radius(double mass);

class World {
 public:
  World(const WorldConfig& cfg, int n_players, std::uint64_t seed);

  /// New mass-10 cells at uniform random positions; pellets resampled.
  void reset();

  /// Advances one game step: move toward targets, decay, eat, respawn the
  /// eaten (they re-enter play on the next step), restore pellet density.
  StepEvents step();

  /// r = m_t - m_{t-1} while alive; on the step a player is eaten,
  /// r = -1.4 * m_{t-1} - 40.
  double compute_reward(int player_id) const;

  /// Square view centered on the cell; half width grows with sqrt(mass).
  /// May extend past the map bounds (the wall grid encodes the overlap).
  View fov(int player_id) const;

  double speed(double mass) const;

  void set_mouse_target(int player_id, Vec2 target);

  /// Streams `step, player_id, target_x, target_y, mass` lines for every
  /// player on every step (enough to replay a run bit-exactly).
  void set_trajectory_log(std::ostream* log) { log_ = log; }

  const WorldConfig& config() const { return cfg_; }
  const std::vector<Player>& players() const { return players_; }
  const std::vector<Pellet>& pellets() const { return pellets_; }
  long step_count() const { return step_count_; }
  double total_pellet_mass() const;

 private:
  Vec2 random_position();
  Vec2 clamp_to_map(Vec2 p) const;

  WorldConfig cfg_;
  std::vector<Player> players_;
  std::vector<Pellet> pellets_;
  long step_count_ = 0;
  Rng rng_;
  std::ostream* log_ = nullptr;
};

/// Per-window result of a frame-skipped decision for one player.
struct WindowResult {
  double reward = 0.0;
  bool died = false;
};

using PreStepHook = std::function<void(World&)>;

/// Holds `action01` (relative mouse position, mapped onto the player's view
/// each frame) for 1 + k consecutive game steps, summing the per-step
/// rewards. The hook runs before every step so non-learning players can act
/// at game-step cadence. The window ends early when the player is eaten.
WindowResult frame_skip_step(World& world, int player_id, const std::array<double, 2>& action01,
                             int k, const PreStepHook& pre_step = {});

/// Self-play variant: every listed player holds its action over the shared
/// window. The window ends early when any listed player is eaten.
std::vector<WindowResult> frame_skip_step_multi(
    World& world, const std::vector<std::pair<int, std::array<double, 2>>>& actions, int k,
    const PreStepHook& pre_step = {});

}  // namespace agarl
