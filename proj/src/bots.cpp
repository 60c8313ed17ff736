#include "agarl/bots.hpp"

#include <algorithm>

namespace agarl {

namespace {
constexpr double kDistanceFloor = 1e-6;
}

Vec2 greedy_action(const World& world, int bot_id) {
  const Player& bot = world.players().at(bot_id);
  double best_ratio = -1.0;
  Vec2 best_target = bot.pos;  // no candidates: hold position

  for (const Pellet& p : world.pellets()) {
    const double ratio = p.mass / std::max(norm(p.pos - bot.pos), kDistanceFloor);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_target = p.pos;
    }
  }
  const double edible_below = bot.mass / world.config().absorption_threshold;
  for (const Player& other : world.players()) {
    if (other.id == bot_id || !other.alive) continue;
    if (other.mass >= edible_below) continue;
    const double ratio = other.mass / std::max(norm(other.pos - bot.pos), kDistanceFloor);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_target = other.pos;
    }
  }
  return best_target;
}

Vec2 random_action(Rng& rng, const View& view) {
  return {rng.uniform(view.center.x - view.half_width, view.center.x + view.half_width),
          rng.uniform(view.center.y - view.half_width, view.center.y + view.half_width)};
}

}  // namespace agarl
