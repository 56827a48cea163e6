#include "hexhybrid/scripted_agent.hpp"

#include <algorithm>
#include <limits>

namespace hexhybrid {
namespace {

constexpr int kNone = std::numeric_limits<int>::max();

int nearest_enemy_distance(const GameState& state, const Unit& unit, HexCoord h) {
  int best = kNone;
  for (const auto& e : state.units) {
    if (e.alive && e.faction != unit.faction) best = std::min(best, hex_distance(h, e.pos));
  }
  return best;
}

}  // namespace

Posture assess_posture(const GameState& state, Faction faction) {
  return state.alive_strength(faction) >= state.alive_strength(opponent(faction)) ? Posture::Offensive
                                                                                  : Posture::Defensive;
}

double hex_move_score(const GameState& state, const Unit& unit, HexCoord h, Posture posture,
                      const ScriptedParams& params) {
  if (posture == Posture::Offensive) {
    int best = nearest_enemy_distance(state, unit, h);
    for (const auto& city : state.cities) {
      if (city.owner != unit.faction) best = std::min(best, hex_distance(h, city.hex));
    }
    return best == kNone ? 0.0 : static_cast<double>(best);
  }

  int city_dist = kNone;
  for (const auto& city : state.cities) {
    if (city.owner != opponent(unit.faction)) city_dist = std::min(city_dist, hex_distance(h, city.hex));
  }
  if (city_dist == kNone) {
    for (const auto& city : state.cities) city_dist = std::min(city_dist, hex_distance(h, city.hex));
  }
  double score = city_dist == kNone ? 0.0 : static_cast<double>(city_dist);
  const int enemy_dist = nearest_enemy_distance(state, unit, h);
  if (enemy_dist != kNone) score += params.avoid_weight * (board_diameter(state.dims) - enemy_dist);
  return score;
}

ActionCmd choose_action(const GameState& state, int unit_id, Posture posture, Rng& rng,
                        const ScriptedParams& params) {
  const auto targets = attackable_enemies(state, unit_id);
  if (!targets.empty()) return ActionCmd::attack(targets[static_cast<std::size_t>(rng.uniform_index(static_cast<int>(targets.size())))]);

  const Unit& unit = state.unit(unit_id);
  const auto dests = legal_move_destinations(state, unit_id);  // sorted, so first minimum wins ties
  double best_score = hex_move_score(state, unit, unit.pos, posture, params);
  const HexCoord* best = nullptr;
  for (const HexCoord& h : dests) {
    const double s = hex_move_score(state, unit, h, posture, params);
    if (s < best_score) {
      best_score = s;
      best = &h;
    }
  }
  return best ? ActionCmd::move(*best) : ActionCmd::hold();
}

}  // namespace hexhybrid
