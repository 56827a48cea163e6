#include "hexhybrid/scenario.hpp"

#include <algorithm>
#include <string>

#include "hexhybrid/errors.hpp"
#include "hexhybrid/rng.hpp"

namespace hexhybrid {
namespace {

constexpr int kMaxAttempts = 64;

template <class T>
T pick(const std::vector<T>& choices, Rng& rng) {
  return choices[static_cast<std::size_t>(rng.uniform_index(static_cast<int>(choices.size())))];
}

Terrain draw_terrain(const TerrainMix& mix, bool allow_water, Rng& rng) {
  const double water = allow_water ? mix.water : 0.0;
  const double total = mix.clear + mix.rough + mix.marsh + water;
  double u = rng.uniform01() * total;
  if ((u -= mix.clear) < 0) return Terrain::Clear;
  if ((u -= mix.rough) < 0) return Terrain::Rough;
  if ((u -= mix.marsh) < 0) return Terrain::Marsh;
  return allow_water ? Terrain::Water : Terrain::Clear;
}

// Draws `count` distinct hexes from `pool` (partial Fisher-Yates).
std::vector<HexCoord> draw_distinct(std::vector<HexCoord> pool, int count, Rng& rng) {
  if (static_cast<int>(pool.size()) < count) return {};
  for (int k = 0; k < count; ++k) {
    const int j = k + rng.uniform_index(static_cast<int>(pool.size()) - k);
    std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

std::vector<HexCoord> rows_cells(BoardDims dims, int row_begin, int row_end) {
  std::vector<HexCoord> out;
  for (int r = std::max(0, row_begin); r < std::min(dims.n_rows, row_end); ++r) {
    for (int c = 0; c < dims.n_cols; ++c) out.push_back({r, c});
  }
  return out;
}

}  // namespace

std::vector<int> middle_axis_rows(BoardDims dims) {
  if (dims.n_rows % 2 == 1) return {dims.n_rows / 2};
  return {dims.n_rows / 2 - 1, dims.n_rows / 2};
}

void validate(const ScenarioConfig& config) {
  if (config.dims.n_rows < 1 || config.dims.n_cols < 1) throw ConfigError("board dimensions must be positive");
  if (config.units_per_faction_choices.empty() || config.city_count_choices.empty()) {
    throw ConfigError("unit and city count choices must be nonempty");
  }
  for (int n : config.units_per_faction_choices) {
    if (n < 1) throw ConfigError("units per faction must be positive");
  }
  for (int n : config.city_count_choices) {
    if (n < 0) throw ConfigError("city count must be nonnegative");
  }
  if (config.max_phases < 1) throw ConfigError("max_phases must be positive");
  if (config.spawn_rows < 1 || 2 * config.spawn_rows > config.dims.n_rows) {
    throw ConfigError("spawn bands must fit on the board without overlapping");
  }
  const auto& m = config.terrain_mix;
  if (m.clear < 0 || m.rough < 0 || m.marsh < 0 || m.water < 0 || m.clear + m.rough + m.marsh <= 0) {
    throw ConfigError("terrain mix must be nonnegative with some passable mass");
  }
}

GameState generate(const ScenarioConfig& config, std::uint64_t seed) {
  validate(config);
  const BoardDims dims = config.dims;
  const int band = config.spawn_rows;
  Rng rng(mix_seed(seed));

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const int n_blue = pick(config.units_per_faction_choices, rng);
    const int n_red = pick(config.units_per_faction_choices, rng);
    const int n_cities = pick(config.city_count_choices, rng);

    // City candidates: the weaker side's half outside its spawn band, or the middle axis.
    std::vector<HexCoord> city_pool;
    if (n_blue < n_red) {
      city_pool = rows_cells(dims, dims.n_rows / 2, dims.n_rows - band);
    } else if (n_red < n_blue) {
      city_pool = rows_cells(dims, band, (dims.n_rows + 1) / 2);
    } else {
      for (int r : middle_axis_rows(dims)) {
        auto row = rows_cells(dims, r, r + 1);
        city_pool.insert(city_pool.end(), row.begin(), row.end());
      }
    }
    const auto city_hexes = draw_distinct(city_pool, n_cities, rng);
    if (static_cast<int>(city_hexes.size()) != n_cities) continue;

    GameState state;
    state.dims = dims;
    state.max_phases = config.max_phases;
    state.seed = seed;
    state.end_on_elimination = config.end_on_elimination;
    state.terrain.resize(static_cast<std::size_t>(dims.cell_count()));
    for (int r = 0; r < dims.n_rows; ++r) {
      const bool in_band = r < band || r >= dims.n_rows - band;
      for (int c = 0; c < dims.n_cols; ++c) {
        state.terrain[static_cast<std::size_t>(dims.index({r, c}))] = draw_terrain(config.terrain_mix, !in_band, rng);
      }
    }
    for (const HexCoord& h : city_hexes) {
      state.terrain[static_cast<std::size_t>(dims.index(h))] = Terrain::Urban;
      state.cities.push_back({h, std::nullopt});
    }
    std::sort(state.cities.begin(), state.cities.end(), [](const City& a, const City& b) { return a.hex < b.hex; });

    auto spawn_pool = [&](int row_begin, int row_end) {
      std::vector<HexCoord> pool;
      for (const HexCoord& h : rows_cells(dims, row_begin, row_end)) {
        const Terrain t = state.terrain_at(h);
        if (t != Terrain::Water && t != Terrain::Urban) pool.push_back(h);
      }
      return pool;
    };
    const auto blue_pos = draw_distinct(spawn_pool(dims.n_rows - band, dims.n_rows), n_blue, rng);
    const auto red_pos = draw_distinct(spawn_pool(0, band), n_red, rng);
    if (static_cast<int>(blue_pos.size()) != n_blue || static_cast<int>(red_pos.size()) != n_red) continue;

    auto place = [&](const std::vector<HexCoord>& positions, Faction f) {
      auto sorted = positions;
      std::sort(sorted.begin(), sorted.end());
      for (const HexCoord& h : sorted) {
        Unit u;
        u.id = static_cast<int>(state.units.size());
        u.faction = f;
        u.type = config.unit_type;
        u.pos = h;
        state.units.push_back(u);
      }
    };
    place(blue_pos, Faction::Blue);
    place(red_pos, Faction::Red);
    return state;
  }
  throw GenerationError("could not place units and cities after " + std::to_string(kMaxAttempts) +
                        " attempts (seed " + std::to_string(seed) + ")");
}

ScenarioCycle::ScenarioCycle(const ScenarioConfig& config, std::uint64_t seed, int cycle_len)
    : config_(config), seed_(seed) {
  if (cycle_len < 1) throw ConfigError("scenario cycle length must be at least 1");
  scenarios_.reserve(static_cast<std::size_t>(cycle_len));
  for (int k = 0; k < cycle_len; ++k) scenarios_.push_back(generate(config, derive_seed(seed, static_cast<std::uint64_t>(k))));
}

const GameState& ScenarioCycle::at(std::int64_t reset_index) const {
  if (reset_index < 0) throw ConfigError("negative reset index");
  return scenarios_[static_cast<std::size_t>(slot(reset_index))];
}

}  // namespace hexhybrid
