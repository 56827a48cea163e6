#include "hexhybrid/hexgrid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {
namespace {

// (d_row, d_col) per direction, indexed [row parity][direction].
constexpr std::array<std::array<std::array<int, 2>, kHexDirections>, 2> kOffsets{{
    {{{0, +1}, {-1, 0}, {-1, -1}, {0, -1}, {+1, -1}, {+1, 0}}},  // even rows
    {{{0, +1}, {-1, +1}, {-1, 0}, {0, -1}, {+1, 0}, {+1, +1}}},  // odd rows
}};

struct Cube {
  int x, y, z;
};

Cube to_cube(HexCoord c) {
  const int x = c.col - (c.row - (c.row & 1)) / 2;
  const int z = c.row;
  return {x, -x - z, z};
}

}  // namespace

void require_in_bounds(HexCoord c, BoardDims dims) {
  if (!dims.contains(c)) {
    throw CoordinateError("hex (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") outside " +
                          std::to_string(dims.n_rows) + "x" + std::to_string(dims.n_cols) + " board");
  }
}

HexCoord hex_step(HexCoord c, HexDirection dir) {
  const auto& d = kOffsets[c.row & 1][static_cast<int>(dir)];
  return {c.row + d[0], c.col + d[1]};
}

std::optional<HexCoord> hex_neighbor(HexCoord c, HexDirection dir, BoardDims dims) {
  require_in_bounds(c, dims);
  const HexCoord n = hex_step(c, dir);
  if (!dims.contains(n)) return std::nullopt;
  return n;
}

std::vector<HexCoord> hex_neighbors(HexCoord c, BoardDims dims) {
  require_in_bounds(c, dims);
  std::vector<HexCoord> out;
  out.reserve(kHexDirections);
  for (int d = 0; d < kHexDirections; ++d) {
    const HexCoord n = hex_step(c, static_cast<HexDirection>(d));
    if (dims.contains(n)) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int hex_distance(HexCoord a, HexCoord b) {
  const Cube ca = to_cube(a);
  const Cube cb = to_cube(b);
  return std::max({std::abs(ca.x - cb.x), std::abs(ca.y - cb.y), std::abs(ca.z - cb.z)});
}

std::vector<HexCoord> super_hexagon(HexCoord center, int radius, BoardDims dims) {
  require_in_bounds(center, dims);
  std::vector<HexCoord> out;
  const int r0 = std::max(0, center.row - radius);
  const int r1 = std::min(dims.n_rows - 1, center.row + radius);
  const int c0 = std::max(0, center.col - radius - 1);
  const int c1 = std::min(dims.n_cols - 1, center.col + radius + 1);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (hex_distance(center, {r, c}) <= radius) out.push_back({r, c});
    }
  }
  return out;
}

HexCoord action_center(int i, int j, BoardDims dims) {
  if (i < 0 || j < 0 || i >= kActionGridSize || j >= kActionGridSize) {
    throw CoordinateError("action lattice cell (" + std::to_string(i) + "," + std::to_string(j) + ") outside 7x7");
  }
  // Exact integer form of floor((i + 0.5) * n / 7).
  const int row = ((2 * i + 1) * dims.n_rows) / (2 * kActionGridSize);
  const int col = ((2 * j + 1) * dims.n_cols) / (2 * kActionGridSize);
  return {row, col};
}

std::vector<HexCoord> objective_area(int action_index, BoardDims dims) {
  if (action_index < 0 || action_index >= kActionCount) {
    throw ConfigError("objective action index " + std::to_string(action_index) + " outside [0, 49)");
  }
  const HexCoord center = action_center(action_index / kActionGridSize, action_index % kActionGridSize, dims);
  return super_hexagon(center, kObjectiveRadius, dims);
}

int board_diameter(BoardDims dims) {
  thread_local BoardDims cached_dims{0, 0};
  thread_local int cached = 0;
  if (dims == cached_dims) return cached;
  // The maximum of a lattice metric over the board is attained on its rim.
  std::vector<HexCoord> rim;
  for (int r = 0; r < dims.n_rows; ++r) {
    for (int c = 0; c < dims.n_cols; ++c) {
      if (r == 0 || c == 0 || r == dims.n_rows - 1 || c == dims.n_cols - 1) rim.push_back({r, c});
    }
  }
  int best = 0;
  for (const auto& a : rim) {
    for (const auto& b : rim) best = std::max(best, hex_distance(a, b));
  }
  cached_dims = dims;
  cached = best;
  return best;
}

}  // namespace hexhybrid
