#pragma once

#include <array>
#include <compare>
#include <optional>
#include <vector>

namespace hexhybrid {

// Offset coordinates on the displayed board. Odd rows are shifted right by
// half a hex ("odd-r"); every module uses this convention.
struct HexCoord {
  int row = 0;
  int col = 0;

  auto operator<=>(const HexCoord&) const = default;
};

struct BoardDims {
  int n_rows = 10;
  int n_cols = 10;

  auto operator<=>(const BoardDims&) const = default;

  bool contains(HexCoord c) const { return c.row >= 0 && c.col >= 0 && c.row < n_rows && c.col < n_cols; }
  int cell_count() const { return n_rows * n_cols; }
  int index(HexCoord c) const { return c.row * n_cols + c.col; }
  HexCoord coord(int index) const { return {index / n_cols, index % n_cols}; }
};

// Lattice directions in canonical order. Hex-convolution taps and the
// individual agent's directional actions both follow this order.
enum class HexDirection : int { East = 0, NorthEast, NorthWest, West, SouthWest, SouthEast };
inline constexpr int kHexDirections = 6;

inline constexpr int kActionGridSize = 7;
inline constexpr int kActionCount = kActionGridSize * kActionGridSize;
inline constexpr int kObjectiveRadius = 2;

// Neighbor in `dir` on the unbounded lattice.
HexCoord hex_step(HexCoord c, HexDirection dir);

// In-bounds neighbor in `dir`, if any. Throws CoordinateError when c is off-board.
std::optional<HexCoord> hex_neighbor(HexCoord c, HexDirection dir, BoardDims dims);

// In-bounds neighbors sorted by (row, col).
std::vector<HexCoord> hex_neighbors(HexCoord c, BoardDims dims);

// Shortest adjacency-path length on the unbounded lattice.
int hex_distance(HexCoord a, HexCoord b);

// In-bounds hexes within `radius` of center, sorted by (row, col).
std::vector<HexCoord> super_hexagon(HexCoord center, int radius, BoardDims dims);

// Center hex of the (i, j) cell of the 7x7 action lattice.
HexCoord action_center(int i, int j, BoardDims dims);

// Objective area selected by a manager action index in [0, 49).
std::vector<HexCoord> objective_area(int action_index, BoardDims dims);

// Largest hex_distance between two cells of the board.
int board_diameter(BoardDims dims);

void require_in_bounds(HexCoord c, BoardDims dims);

}  // namespace hexhybrid
