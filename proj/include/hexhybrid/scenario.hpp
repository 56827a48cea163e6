#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hexhybrid/engine.hpp"

namespace hexhybrid {

// Terrain proportions for hexes that are not cities.
struct TerrainMix {
  double clear = 0.80;
  double rough = 0.10;
  double marsh = 0.05;
  double water = 0.05;
};

struct ScenarioConfig {
  BoardDims dims{10, 10};
  std::vector<int> units_per_faction_choices{6, 9};
  std::vector<int> city_count_choices{1, 2};
  int max_phases = 40;
  int spawn_rows = 3;
  TerrainMix terrain_mix{};
  UnitType unit_type = UnitType::Infantry;
  bool end_on_elimination = true;
};

void validate(const ScenarioConfig& config);

// Blue spawns in the bottom `spawn_rows` rows, Red in the top rows. Cities go
// on the weaker faction's half, or on the middle axis when forces are equal.
GameState generate(const ScenarioConfig& config, std::uint64_t seed);

// Fixed set of seeded scenarios reused round-robin.
class ScenarioCycle {
 public:
  ScenarioCycle(const ScenarioConfig& config, std::uint64_t seed, int cycle_len);

  const GameState& at(std::int64_t reset_index) const;
  int size() const { return static_cast<int>(scenarios_.size()); }
  int slot(std::int64_t reset_index) const { return static_cast<int>(reset_index % size()); }
  std::uint64_t seed() const { return seed_; }
  const ScenarioConfig& config() const { return config_; }

 private:
  ScenarioConfig config_;
  std::uint64_t seed_;
  std::vector<GameState> scenarios_;
};

// Rows forming the board's middle axis (one row for odd heights, two for even).
std::vector<int> middle_axis_rows(BoardDims dims);

}  // namespace hexhybrid
