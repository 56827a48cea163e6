#pragma once

#include "hexhybrid/engine.hpp"
#include "hexhybrid/rng.hpp"

namespace hexhybrid {

enum class Posture { Offensive, Defensive };

struct ScriptedParams {
  // Weight on keeping away from the nearest enemy in Defensive posture.
  double avoid_weight = 0.25;
};

// Offensive iff the faction's alive strength is at least the opponent's.
Posture assess_posture(const GameState& state, Faction faction);

// Lower is better.
//   Offensive: distance from h to the nearest alive enemy or city not owned by
//              the unit's faction (0 when there is no such target).
//   Defensive: distance to the nearest own-or-neutral city (any city if none,
//              0 if the board has none) plus avoid_weight * (diameter - distance
//              to the nearest enemy); the second term is 0 with no enemies.
double hex_move_score(const GameState& state, const Unit& unit, HexCoord h, Posture posture,
                      const ScriptedParams& params = {});

// Attack a uniformly drawn in-range enemy if any; otherwise take the
// lowest-scoring move (ties: lowest (row, col)). The unit holds when no move
// scores strictly below its current hex.
ActionCmd choose_action(const GameState& state, int unit_id, Posture posture, Rng& rng,
                        const ScriptedParams& params = {});

}  // namespace hexhybrid
