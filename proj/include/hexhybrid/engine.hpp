#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexhybrid/hexgrid.hpp"

namespace hexhybrid {

enum class Faction : std::uint8_t { Blue = 0, Red = 1 };

constexpr Faction opponent(Faction f) { return f == Faction::Blue ? Faction::Red : Faction::Blue; }
std::string_view to_string(Faction f);

enum class UnitType : std::uint8_t { Infantry = 0, Mechanized, Armor, Artillery };
inline constexpr int kUnitTypeCount = 4;

struct UnitStats {
  int attack_range;
  int move_range;
};
UnitStats unit_stats(UnitType t);
std::string_view to_string(UnitType t);

enum class Terrain : std::uint8_t { Clear = 0, Water, Rough, Urban, Marsh };
inline constexpr int kTerrainCount = 5;
std::string_view to_string(Terrain t);

// Fraction of the nominal attack damage a defender on this terrain receives.
double terrain_defense_multiplier(Terrain t);

inline constexpr int kFullStrength = 100;
inline constexpr int kRemovalThreshold = 50;
inline constexpr int kCityPointsPerPhase = 24;

struct Unit {
  int id = 0;
  Faction faction = Faction::Blue;
  UnitType type = UnitType::Infantry;
  int strength = kFullStrength;
  HexCoord pos{};
  bool alive = true;
  bool acted = false;  // has taken its action in the current phase

  bool operator==(const Unit&) const = default;
};

struct City {
  HexCoord hex{};
  std::optional<Faction> owner;

  bool operator==(const City&) const = default;
};

// Score accumulators; every entry is nondecreasing over a game.
struct ScoreBreakdown {
  int blue_city = 0;
  int blue_combat = 0;
  int red_city = 0;
  int red_combat = 0;

  int total() const { return blue_city + blue_combat - (red_city + red_combat); }
  int total_for(Faction f) const { return f == Faction::Blue ? total() : -total(); }
  int& city(Faction f) { return f == Faction::Blue ? blue_city : red_city; }
  int& combat(Faction f) { return f == Faction::Blue ? blue_combat : red_combat; }
  int city(Faction f) const { return f == Faction::Blue ? blue_city : red_city; }
  int combat(Faction f) const { return f == Faction::Blue ? blue_combat : red_combat; }

  bool operator==(const ScoreBreakdown&) const = default;
};

struct GameState {
  BoardDims dims{};
  std::vector<Terrain> terrain;  // row-major, dims.cell_count() entries
  std::vector<Unit> units;       // units[i].id == i
  std::vector<City> cities;      // exactly the Urban hexes, sorted by hex
  int phase = 0;
  int max_phases = 40;
  Faction on_move = Faction::Blue;
  ScoreBreakdown score{};
  std::uint64_t seed = 0;
  bool end_on_elimination = true;

  Terrain terrain_at(HexCoord c) const { return terrain[static_cast<std::size_t>(dims.index(c))]; }
  const Unit& unit(int id) const;
  Unit& unit(int id);
  // Alive unit on hex c, or nullptr.
  const Unit* unit_at(HexCoord c) const;
  City* city_at(HexCoord c);
  const City* city_at(HexCoord c) const;
  int alive_count(Faction f) const;
  int alive_strength(Faction f) const;
  int original_strength(Faction f) const;

  bool operator==(const GameState&) const = default;
};

enum class ActionKind : std::uint8_t { Hold = 0, Move, Attack };

struct ActionCmd {
  ActionKind kind = ActionKind::Hold;
  HexCoord to{};       // Move only
  int target_id = -1;  // Attack only

  static ActionCmd hold() { return {}; }
  static ActionCmd move(HexCoord to) { return {ActionKind::Move, to, -1}; }
  static ActionCmd attack(int target) { return {ActionKind::Attack, {}, target}; }

  bool operator==(const ActionCmd&) const = default;
};
std::string describe(const ActionCmd& a);

enum class EventKind : std::uint8_t { Damage = 0, Removal, Capture, CityPoints };

// Scoring-relevant consequence of an action or phase end. Damage and Removal
// carry the attacker as actor and the defender as target; Capture carries the
// entering unit; CityPoints carries the owning faction and city hex.
struct GameEvent {
  EventKind kind;
  int actor_id = -1;
  int target_id = -1;
  Faction faction = Faction::Blue;  // faction credited with `points`
  HexCoord hex{};
  int points = 0;

  bool operator==(const GameEvent&) const = default;
};

using EventLog = std::vector<GameEvent>;

// Hold first, then Moves sorted by destination, then Attacks sorted by target id.
std::vector<ActionCmd> legal_actions(const GameState& state, int unit_id);

// Move destinations reachable within the unit's move range, sorted.
std::vector<HexCoord> legal_move_destinations(const GameState& state, int unit_id);

// Alive enemies within attack range, ascending id.
std::vector<int> attackable_enemies(const GameState& state, int unit_id);

bool is_legal(const GameState& state, int unit_id, const ActionCmd& action);

int attack_damage(int attacker_strength, Terrain defender_terrain);

// Validates and applies; the state is untouched when validation throws.
void apply_action_in_place(GameState& state, int unit_id, const ActionCmd& action, EventLog* events = nullptr);
GameState apply_action(const GameState& state, int unit_id, const ActionCmd& action);

// True once every alive on-move unit has acted.
bool phase_complete(const GameState& state);

void end_phase_in_place(GameState& state, EventLog* events = nullptr);
GameState end_phase(const GameState& state);

int total_score(const GameState& state);
int total_score(const GameState& state, Faction perspective);

bool is_terminal(const GameState& state);

// City points each owned city yields per phase (24 split across the cities).
int city_points_per_phase(const GameState& state);

}  // namespace hexhybrid
