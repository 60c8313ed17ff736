#pragma once

#include "agarl/rng.hpp"
#include "agarl/world.hpp"

namespace agarl {

enum class BotKind { greedy, random };

/// Heuristic baseline: heads for the pellet or edible enemy cell with the
/// highest mass/distance ratio. Enemy cells it cannot absorb are ignored.
/// Decides every game step (no frame skip).
Vec2 greedy_action(const World& world, int bot_id);

/// Uniform random point inside the bot's view rectangle; resampled every
/// game step.
Vec2 random_action(Rng& rng, const View& view);

}  // namespace agarl
