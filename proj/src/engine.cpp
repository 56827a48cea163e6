#include "hexhybrid/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {

std::string_view to_string(Faction f) { return f == Faction::Blue ? "blue" : "red"; }

UnitStats unit_stats(UnitType t) {
  switch (t) {
    case UnitType::Infantry:
      return {1, 1};
    case UnitType::Mechanized:
      return {1, 2};
    case UnitType::Armor:
      return {1, 2};
    case UnitType::Artillery:
      return {2, 1};
  }
  return {1, 1};
}

std::string_view to_string(UnitType t) {
  switch (t) {
    case UnitType::Infantry:
      return "infantry";
    case UnitType::Mechanized:
      return "mechanized";
    case UnitType::Armor:
      return "armor";
    case UnitType::Artillery:
      return "artillery";
  }
  return "?";
}

std::string_view to_string(Terrain t) {
  switch (t) {
    case Terrain::Clear:
      return "clear";
    case Terrain::Water:
      return "water";
    case Terrain::Rough:
      return "rough";
    case Terrain::Urban:
      return "urban";
    case Terrain::Marsh:
      return "marsh";
  }
  return "?";
}

double terrain_defense_multiplier(Terrain t) {
  switch (t) {
    case Terrain::Rough:
      return 0.75;
    case Terrain::Urban:
      return 0.5;
    default:
      return 1.0;
  }
}

const Unit& GameState::unit(int id) const {
  if (id < 0 || id >= static_cast<int>(units.size())) throw IllegalActionError("unknown unit id " + std::to_string(id));
  return units[static_cast<std::size_t>(id)];
}

Unit& GameState::unit(int id) {
  if (id < 0 || id >= static_cast<int>(units.size())) throw IllegalActionError("unknown unit id " + std::to_string(id));
  return units[static_cast<std::size_t>(id)];
}

const Unit* GameState::unit_at(HexCoord c) const {
  for (const auto& u : units) {
    if (u.alive && u.pos == c) return &u;
  }
  return nullptr;
}

City* GameState::city_at(HexCoord c) {
  for (auto& city : cities) {
    if (city.hex == c) return &city;
  }
  return nullptr;
}

const City* GameState::city_at(HexCoord c) const {
  for (const auto& city : cities) {
    if (city.hex == c) return &city;
  }
  return nullptr;
}

int GameState::alive_count(Faction f) const {
  return static_cast<int>(std::count_if(units.begin(), units.end(), [f](const Unit& u) { return u.alive && u.faction == f; }));
}

int GameState::alive_strength(Faction f) const {
  int total = 0;
  for (const auto& u : units) {
    if (u.alive && u.faction == f) total += u.strength;
  }
  return total;
}

int GameState::original_strength(Faction f) const {
  int total = 0;
  for (const auto& u : units) {
    if (u.faction == f) total += kFullStrength;
  }
  return total;
}

std::string describe(const ActionCmd& a) {
  switch (a.kind) {
    case ActionKind::Hold:
      return "hold";
    case ActionKind::Move:
      return "move(" + std::to_string(a.to.row) + "," + std::to_string(a.to.col) + ")";
    case ActionKind::Attack:
      return "attack(" + std::to_string(a.target_id) + ")";
  }
  return "?";
}

namespace {

const Unit& require_actor(const GameState& state, int unit_id) {
  const Unit& u = state.unit(unit_id);
  if (!u.alive) throw IllegalActionError("unit " + std::to_string(unit_id) + " is ineffective");
  if (u.faction != state.on_move) throw IllegalActionError("unit " + std::to_string(unit_id) + " is not on move");
  return u;
}

bool passable(const GameState& state, HexCoord c) {
  return state.terrain_at(c) != Terrain::Water && state.unit_at(c) == nullptr;
}

}  // namespace

std::vector<HexCoord> legal_move_destinations(const GameState& state, int unit_id) {
  const Unit& u = require_actor(state, unit_id);
  const int range = unit_stats(u.type).move_range;
  std::vector<HexCoord> out;
  if (range == 1) {
    for (const HexCoord& n : hex_neighbors(u.pos, state.dims)) {
      if (passable(state, n)) out.push_back(n);
    }
    return out;
  }
  // Multi-hex movement: breadth-first through passable, unoccupied hexes.
  std::vector<int> depth(static_cast<std::size_t>(state.dims.cell_count()), -1);
  std::deque<HexCoord> frontier{u.pos};
  depth[static_cast<std::size_t>(state.dims.index(u.pos))] = 0;
  while (!frontier.empty()) {
    const HexCoord c = frontier.front();
    frontier.pop_front();
    const int d = depth[static_cast<std::size_t>(state.dims.index(c))];
    if (d == range) continue;
    for (const HexCoord& n : hex_neighbors(c, state.dims)) {
      auto& dn = depth[static_cast<std::size_t>(state.dims.index(n))];
      if (dn >= 0 || !passable(state, n)) continue;
      dn = d + 1;
      out.push_back(n);
      frontier.push_back(n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> attackable_enemies(const GameState& state, int unit_id) {
  const Unit& u = require_actor(state, unit_id);
  const int range = unit_stats(u.type).attack_range;
  std::vector<int> out;
  for (const auto& e : state.units) {
    if (e.alive && e.faction != u.faction && hex_distance(u.pos, e.pos) <= range) out.push_back(e.id);
  }
  return out;
}

std::vector<ActionCmd> legal_actions(const GameState& state, int unit_id) {
  std::vector<ActionCmd> out{ActionCmd::hold()};
  for (const HexCoord& h : legal_move_destinations(state, unit_id)) out.push_back(ActionCmd::move(h));
  for (int t : attackable_enemies(state, unit_id)) out.push_back(ActionCmd::attack(t));
  return out;
}

bool is_legal(const GameState& state, int unit_id, const ActionCmd& action) {
  const Unit& u = require_actor(state, unit_id);
  if (u.acted) return false;
  switch (action.kind) {
    case ActionKind::Hold:
      return true;
    case ActionKind::Move: {
      if (!state.dims.contains(action.to)) return false;
      const auto dests = legal_move_destinations(state, unit_id);
      return std::binary_search(dests.begin(), dests.end(), action.to);
    }
    case ActionKind::Attack: {
      if (action.target_id < 0 || action.target_id >= static_cast<int>(state.units.size())) return false;
      const Unit& t = state.units[static_cast<std::size_t>(action.target_id)];
      return t.alive && t.faction != u.faction && hex_distance(u.pos, t.pos) <= unit_stats(u.type).attack_range;
    }
  }
  return false;
}

int attack_damage(int attacker_strength, Terrain defender_terrain) {
  return static_cast<int>(std::lround(0.4 * attacker_strength * terrain_defense_multiplier(defender_terrain)));
}

void apply_action_in_place(GameState& state, int unit_id, const ActionCmd& action, EventLog* events) {
  if (!is_legal(state, unit_id, action)) {
    throw IllegalActionError("illegal action " + describe(action) + " for unit " + std::to_string(unit_id));
  }
  Unit& u = state.unit(unit_id);
  u.acted = true;
  switch (action.kind) {
    case ActionKind::Hold:
      break;
    case ActionKind::Move: {
      u.pos = action.to;
      if (City* city = state.city_at(action.to); city != nullptr && city->owner != u.faction) {
        city->owner = u.faction;
        if (events) events->push_back({EventKind::Capture, u.id, -1, u.faction, action.to, 0});
      }
      break;
    }
    case ActionKind::Attack: {
      Unit& t = state.unit(action.target_id);
      const int damage = std::min(t.strength, attack_damage(u.strength, state.terrain_at(t.pos)));
      t.strength -= damage;
      state.score.combat(u.faction) += damage;
      if (events) events->push_back({EventKind::Damage, u.id, t.id, u.faction, t.pos, damage});
      if (t.strength < kRemovalThreshold) {
        t.alive = false;
        state.score.combat(u.faction) += t.strength;
        if (events) events->push_back({EventKind::Removal, u.id, t.id, u.faction, t.pos, t.strength});
      }
      break;
    }
  }
}

GameState apply_action(const GameState& state, int unit_id, const ActionCmd& action) {
  GameState next = state;
  apply_action_in_place(next, unit_id, action);
  return next;
}

bool phase_complete(const GameState& state) {
  return std::none_of(state.units.begin(), state.units.end(),
                      [&](const Unit& u) { return u.alive && u.faction == state.on_move && !u.acted; });
}

int city_points_per_phase(const GameState& state) {
  if (state.cities.empty()) return 0;
  return kCityPointsPerPhase / static_cast<int>(state.cities.size());
}

void end_phase_in_place(GameState& state, EventLog* events) {
  if (!phase_complete(state)) throw IllegalActionError("end_phase called before every on-move unit acted");
  if (state.phase >= state.max_phases) throw IllegalActionError("end_phase called after the final phase");
  const int per_city = city_points_per_phase(state);
  for (const City& city : state.cities) {
    if (!city.owner) continue;
    state.score.city(*city.owner) += per_city;
    if (events) events->push_back({EventKind::CityPoints, -1, -1, *city.owner, city.hex, per_city});
  }
  ++state.phase;
  state.on_move = opponent(state.on_move);
  for (Unit& u : state.units) u.acted = false;
}

GameState end_phase(const GameState& state) {
  GameState next = state;
  end_phase_in_place(next);
  return next;
}

int total_score(const GameState& state) { return state.score.total(); }

int total_score(const GameState& state, Faction perspective) { return state.score.total_for(perspective); }

bool is_terminal(const GameState& state) {
  if (state.phase >= state.max_phases) return true;
  if (!state.end_on_elimination) return false;
  return state.alive_count(Faction::Blue) == 0 || state.alive_count(Faction::Red) == 0;
}

}  // namespace hexhybrid
