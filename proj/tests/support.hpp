#pragma once

#include <algorithm>

#include "hexhybrid/engine.hpp"

namespace support {

using namespace hexhybrid;

inline GameState blank(BoardDims dims = {10, 10}) {
  GameState s;
  s.dims = dims;
  s.terrain.assign(static_cast<std::size_t>(dims.cell_count()), Terrain::Clear);
  return s;
}

inline int add_unit(GameState& s, Faction f, HexCoord pos, int strength = kFullStrength,
                    UnitType type = UnitType::Infantry) {
  Unit u;
  u.id = static_cast<int>(s.units.size());
  u.faction = f;
  u.type = type;
  u.strength = strength;
  u.pos = pos;
  s.units.push_back(u);
  return u.id;
}

inline void add_city(GameState& s, HexCoord h, std::optional<Faction> owner = std::nullopt) {
  s.terrain[static_cast<std::size_t>(s.dims.index(h))] = Terrain::Urban;
  s.cities.push_back({h, owner});
  std::sort(s.cities.begin(), s.cities.end(), [](const City& a, const City& b) { return a.hex < b.hex; });
}

inline void set_terrain(GameState& s, HexCoord h, Terrain t) {
  s.terrain[static_cast<std::size_t>(s.dims.index(h))] = t;
}

}  // namespace support
