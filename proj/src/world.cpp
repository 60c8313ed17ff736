#include "agarl/world.hpp"

#include <algorithm>
#include <ostream>

#include "agarl/errors.hpp"
#include "agarl/percept.hpp"

namespace agarl {

double cell_radius(double mass) { return std::sqrt(mass); }

World::World(const WorldConfig& cfg, int n_players, std::uint64_t seed)
    : cfg_(cfg), rng_(seed) {
  if (n_players < 1) throw param_error("world needs at least one player");
  players_.resize(n_players);
  for (int i = 0; i < n_players; ++i) players_[i].id = i;
  reset();
}

Vec2 World::random_position() {
  return {rng_.uniform(0.0, cfg_.map_side), rng_.uniform(0.0, cfg_.map_side)};
}

Vec2 World::clamp_to_map(Vec2 p) const {
  return {std::clamp(p.x, 0.0, cfg_.map_side), std::clamp(p.y, 0.0, cfg_.map_side)};
}

void World::reset() {
  for (Player& p : players_) {
    p.pos = random_position();
    p.mass = cfg_.spawn_mass;
    p.mass_at_previous_step = cfg_.spawn_mass;
    p.mouse_target = p.pos;
    p.alive = true;
    p.died_this_step = false;
  }
  pellets_.clear();
  pellets_.reserve(cfg_.pellet_target());
  for (std::size_t i = 0; i < cfg_.pellet_target(); ++i)
    pellets_.push_back({random_position(), cfg_.pellet_mass});
}

double World::speed(double mass) const {
  const double v = cfg_.speed_at_spawn * std::pow(mass / cfg_.spawn_mass, cfg_.speed_exponent);
  return std::min(v, cfg_.speed_at_spawn);
}

void World::set_mouse_target(int player_id, Vec2 target) {
  players_.at(player_id).mouse_target = clamp_to_map(target);
}

StepEvents World::step() {
  StepEvents events;
  events.pellet_mass_eaten.assign(players_.size(), 0.0);

  for (Player& p : players_) {
    p.died_this_step = false;
    p.mass_at_previous_step = p.mass;
  }

  // Movement toward the mouse target, clamped to the map.
  for (Player& p : players_) {
    const Vec2 d = p.mouse_target - p.pos;
    const double dist = norm(d);
    if (dist > 0.0) {
      const double stride = std::min(speed(p.mass), dist);
      p.pos = clamp_to_map(p.pos + (stride / dist) * d);
    }
  }

  // Mass decay, floored at the spawn mass so decay alone cannot kill.
  for (Player& p : players_)
    p.mass = std::max(cfg_.spawn_mass, p.mass * (1.0 - cfg_.mass_decay_per_step));

  // Pellet eating: a pellet is absorbed when its center lies inside the
  // cell's radius. Players scan in index order.
  for (Player& p : players_) {
    const std::size_t before = pellets_.size();
    std::size_t kept = 0;
    for (std::size_t i = 0; i < pellets_.size(); ++i) {
      if (norm(pellets_[i].pos - p.pos) <= cell_radius(p.mass)) {
        p.mass += pellets_[i].mass;
        events.pellet_mass_eaten[p.id] += pellets_[i].mass;
      } else {
        pellets_[kept++] = pellets_[i];
      }
    }
    pellets_.resize(kept);
    (void)before;
  }

  // Cell eating: A absorbs B when mass_A >= threshold * mass_B and B's
  // center lies inside A's radius.
  for (Player& eater : players_) {
    if (!eater.alive) continue;
    for (Player& prey : players_) {
      if (prey.id == eater.id || !prey.alive) continue;
      if (eater.mass >= cfg_.absorption_threshold * prey.mass &&
          norm(prey.pos - eater.pos) <= cell_radius(eater.mass)) {
        eater.mass += prey.mass;
        prey.alive = false;
        prey.died_this_step = true;
        events.cells_eaten.push_back({eater.id, prey.id, prey.mass});
        events.deaths.push_back(prey.id);
      }
    }
  }

  // The eaten re-enter play with a fresh spawn; they are back on the map
  // from the next step onward and keep died_this_step set so the death
  // reward for this step can be read off.
  for (Player& p : players_) {
    if (!p.alive) {
      p.pos = random_position();
      p.mass = cfg_.spawn_mass;
      p.mouse_target = p.pos;
      p.alive = true;
    }
  }

  // Restore pellet density.
  while (pellets_.size() < cfg_.pellet_target())
    pellets_.push_back({random_position(), cfg_.pellet_mass});

  if (log_) {
    for (const Player& p : players_) {
      char line[160];
      std::snprintf(line, sizeof(line), "%ld, %d, %.17g, %.17g, %.17g\n", step_count_, p.id,
                    p.mouse_target.x, p.mouse_target.y, p.mass);
      (*log_) << line;
    }
  }

  step_count_ += 1;
  return events;
}

double World::compute_reward(int player_id) const {
  const Player& p = players_.at(player_id);
  if (p.died_this_step) return p.mass_at_previous_step * (-1.4) - 40.0;
  return p.mass - p.mass_at_previous_step;
}

View World::fov(int player_id) const {
  const Player& p = players_.at(player_id);
  return {p.pos, cfg_.fov_base + cfg_.fov_scale * std::sqrt(p.mass)};
}

double World::total_pellet_mass() const {
  double total = 0.0;
  for (const Pellet& p : pellets_) total += p.mass;
  return total;
}

WindowResult frame_skip_step(World& world, int player_id, const std::array<double, 2>& action01,
                             int k, const PreStepHook& pre_step) {
  auto r = frame_skip_step_multi(world, {{player_id, action01}}, k, pre_step);
  return r.front();
}

std::vector<WindowResult> frame_skip_step_multi(
    World& world, const std::vector<std::pair<int, std::array<double, 2>>>& actions, int k,
    const PreStepHook& pre_step) {
  if (k < 0) throw param_error("frame skip must be non-negative");
  std::vector<WindowResult> results(actions.size());
  for (int frame = 0; frame < 1 + k; ++frame) {
    if (pre_step) pre_step(world);
    for (const auto& [id, a] : actions)
      world.set_mouse_target(id, action_to_world(a, world.fov(id)));
    world.step();
    bool any_died = false;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      results[i].reward += world.compute_reward(actions[i].first);
      if (world.players()[actions[i].first].died_this_step) {
        results[i].died = true;
        any_died = true;
      }
    }
    if (any_died) break;
  }
  return results;
}

}  // namespace agarl
