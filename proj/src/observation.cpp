#include "hexhybrid/observation.hpp"

#include <algorithm>
#include <cstdio>

namespace hexhybrid {
namespace {

// overlap[p * n + i] = length of [i, i+1) inside [p*n/out, (p+1)*n/out).
std::vector<double> overlap_matrix(int n, int out) {
  std::vector<double> m(static_cast<std::size_t>(out) * n, 0.0);
  for (int p = 0; p < out; ++p) {
    const double lo = static_cast<double>(p) * n / out;
    const double hi = static_cast<double>(p + 1) * n / out;
    for (int i = 0; i < n; ++i) {
      const double len = std::min(hi, static_cast<double>(i + 1)) - std::max(lo, static_cast<double>(i));
      if (len > 0) m[static_cast<std::size_t>(p) * n + i] = len;
    }
  }
  return m;
}

void write_base(ObsTensor& t, int first, const GameState& state, Faction own, const ObservationParams& params) {
  for (const Unit& u : state.units) {
    if (!u.alive) continue;
    t.at(first + (u.faction == own ? 0 : 1), u.pos.row, u.pos.col) = static_cast<double>(u.strength) / kFullStrength;
    t.at(first + 2 + static_cast<int>(u.type), u.pos.row, u.pos.col) = 1.0;
  }
  for (int r = 0; r < state.dims.n_rows; ++r) {
    for (int c = 0; c < state.dims.n_cols; ++c) {
      t.at(first + 6 + static_cast<int>(state.terrain_at({r, c})), r, c) = 1.0;
    }
  }
  for (const City& city : state.cities) {
    if (city.owner) t.at(first + (*city.owner == own ? 11 : 12), city.hex.row, city.hex.col) = 1.0;
  }
  const double phase = state.max_phases > 0 ? static_cast<double>(state.phase) / state.max_phases : 0.0;
  const double score = std::clamp(static_cast<double>(total_score(state, own)) / params.score_scale, -1.0, 1.0);
  std::fill(t.channel(first + 13).begin(), t.channel(first + 13).end(), phase);
  std::fill(t.channel(first + 14).begin(), t.channel(first + 14).end(), score);
}

}  // namespace

ObsTensor base_channels(const GameState& state, Faction perspective, const ObservationParams& params) {
  ObsTensor t(kBaseChannels, state.dims.n_rows, state.dims.n_cols);
  write_base(t, 0, state, perspective, params);
  return t;
}

ObsTensor coarse_abstract(const ObsTensor& t, int out_h, int out_w) {
  const int n = t.height;
  const int m = t.width;
  const auto rows = overlap_matrix(n, out_h);
  const auto cols = overlap_matrix(m, out_w);
  ObsTensor out(t.channels, out_h, out_w);
  std::vector<double> tmp(static_cast<std::size_t>(n) * out_w);
  for (int c = 0; c < t.channels; ++c) {
    // tmp = X * cols^T, then out = rows * tmp.
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const double v = t.at(c, i, j);
        if (v == 0.0) continue;
        for (int q = 0; q < out_w; ++q) tmp[static_cast<std::size_t>(i) * out_w + q] += v * cols[static_cast<std::size_t>(q) * m + j];
      }
    }
    for (int p = 0; p < out_h; ++p) {
      for (int i = 0; i < n; ++i) {
        const double w = rows[static_cast<std::size_t>(p) * n + i];
        if (w == 0.0) continue;
        for (int q = 0; q < out_w; ++q) out.at(c, p, q) += w * tmp[static_cast<std::size_t>(i) * out_w + q];
      }
    }
  }
  return out;
}

ObsTensor manager_observation(const GameState& state, const ManagerState& mgr,
                              std::span<const ManagerState> all_managers, const ObservationParams& params) {
  ObsTensor full(kManagerChannels, state.dims.n_rows, state.dims.n_cols);
  for (int id : mgr.unit_ids) {
    const Unit& u = state.unit(id);
    if (u.alive) full.at(0, u.pos.row, u.pos.col) = 1.0;
  }
  for (const ManagerState& other : all_managers) {
    if (other.manager_id == mgr.manager_id || other.faction != mgr.faction || !other.objective) continue;
    for (const HexCoord& h : other.objective->area) full.at(1, h.row, h.col) = 1.0;
  }
  write_base(full, 2, state, mgr.faction, params);
  return coarse_abstract(full, kActionGridSize, kActionGridSize);
}

ObsTensor individual_observation(const GameState& state, int unit_id, const ObservationParams& params) {
  const Unit& unit = state.unit(unit_id);
  ObsTensor t(kIndividualChannels, state.dims.n_rows, state.dims.n_cols);
  t.at(0, unit.pos.row, unit.pos.col) = 1.0;
  for (const Unit& u : state.units) {
    if (u.alive && u.faction == unit.faction && u.faction == state.on_move && !u.acted) t.at(1, u.pos.row, u.pos.col) = 1.0;
  }
  if (unit.alive && unit.faction == state.on_move) {
    for (const HexCoord& h : legal_move_destinations(state, unit_id)) t.at(2, h.row, h.col) = 1.0;
  }
  write_base(t, 3, state, unit.faction, params);
  return t;
}

std::string dump_text(const ObsTensor& t) {
  std::string out;
  char buf[64];
  for (int c = 0; c < t.channels; ++c) {
    std::snprintf(buf, sizeof buf, "channel %d\n", c);
    out += buf;
    for (int i = 0; i < t.height; ++i) {
      for (int j = 0; j < t.width; ++j) {
        std::snprintf(buf, sizeof buf, j == 0 ? "%.6g" : " %.6g", t.at(c, i, j));
        out += buf;
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace hexhybrid
