#include <gtest/gtest.h>

#include <set>

#include "hexhybrid/errors.hpp"
#include "hexhybrid/hexgrid.hpp"
#include "hexhybrid/rng.hpp"
#include "oracles.hpp"

using namespace hexhybrid;

namespace {
const BoardDims kBoard{10, 10};

HexCoord random_hex(Rng& rng, BoardDims d) { return {rng.uniform_index(d.n_rows), rng.uniform_index(d.n_cols)}; }
}  // namespace

TEST(HexGrid, InteriorCellHasSixNeighbors) {
  EXPECT_EQ(hex_neighbors({5, 5}, kBoard).size(), 6u);
  EXPECT_EQ(hex_neighbors({4, 4}, kBoard).size(), 6u);
}

TEST(HexGrid, CornerNeighborsMatchLatticeEnumeration) {
  for (HexCoord c : {HexCoord{0, 0}, HexCoord{0, 9}, HexCoord{9, 0}, HexCoord{9, 9}}) {
    std::vector<HexCoord> expected;
    for (HexCoord n : oracle::lattice_neighbors(c))
      if (kBoard.contains(n)) expected.push_back(n);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(hex_neighbors(c, kBoard), expected) << c.row << "," << c.col;
  }
  // Even row 0 leans left: (0,0) only touches (0,1) and (1,0).
  EXPECT_EQ(hex_neighbors({0, 0}, kBoard).size(), 2u);
  EXPECT_EQ(hex_neighbors({9, 0}, kBoard).size(), 3u);
}

TEST(HexGrid, NeighborsSortedAndSymmetric) {
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c) {
      const auto ns = hex_neighbors({r, c}, kBoard);
      EXPECT_TRUE(std::is_sorted(ns.begin(), ns.end()));
      for (HexCoord n : ns) {
        const auto back = hex_neighbors(n, kBoard);
        EXPECT_NE(std::find(back.begin(), back.end(), HexCoord{r, c}), back.end());
      }
    }
}

TEST(HexGrid, OutOfBoundsThrows) {
  EXPECT_THROW(hex_neighbors({-1, 0}, kBoard), CoordinateError);
  EXPECT_THROW(hex_neighbors({0, 10}, kBoard), CoordinateError);
}

TEST(HexGrid, StepAndNeighborAgree) {
  for (int d = 0; d < kHexDirections; ++d) {
    const auto dir = static_cast<HexDirection>(d);
    for (HexCoord c : {HexCoord{4, 4}, HexCoord{5, 5}}) {
      EXPECT_EQ(hex_distance(c, hex_step(c, dir)), 1);
      EXPECT_EQ(hex_neighbor(c, dir, kBoard), hex_step(c, dir));
    }
  }
  EXPECT_FALSE(hex_neighbor({0, 0}, HexDirection::West, kBoard).has_value());
}

TEST(HexGrid, OppositeDirectionsCancel) {
  for (int d = 0; d < kHexDirections; ++d) {
    const auto dir = static_cast<HexDirection>(d);
    const auto back = static_cast<HexDirection>((d + 3) % kHexDirections);
    for (HexCoord c : {HexCoord{4, 4}, HexCoord{5, 5}}) EXPECT_EQ(hex_step(hex_step(c, dir), back), c);
  }
}

TEST(HexGrid, DistanceBasics) {
  EXPECT_EQ(hex_distance({3, 3}, {3, 3}), 0);
  for (HexCoord n : hex_neighbors({3, 3}, kBoard)) EXPECT_EQ(hex_distance({3, 3}, n), 1);
}

TEST(HexGrid, DistanceMatchesBfsOracle) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const HexCoord a = random_hex(rng, kBoard), b = random_hex(rng, kBoard);
    EXPECT_EQ(hex_distance(a, b), oracle::bfs_distance(a, b, kBoard));
  }
}

TEST(HexGrid, DistanceIsAMetric) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const HexCoord a = random_hex(rng, kBoard), b = random_hex(rng, kBoard), c = random_hex(rng, kBoard);
    EXPECT_GE(hex_distance(a, b), 0);
    EXPECT_EQ(hex_distance(a, b), hex_distance(b, a));
    EXPECT_LE(hex_distance(a, c), hex_distance(a, b) + hex_distance(b, c));
    EXPECT_EQ(hex_distance(a, b) == 0, a == b);
  }
}

TEST(HexGrid, SuperHexagonSizes) {
  EXPECT_EQ(super_hexagon({5, 5}, 2, kBoard).size(), 19u);
  EXPECT_EQ(super_hexagon({4, 4}, 2, kBoard).size(), 19u);
  EXPECT_EQ(super_hexagon({5, 5}, 0, kBoard), (std::vector<HexCoord>{HexCoord{5, 5}}));
  EXPECT_EQ(super_hexagon({5, 5}, 1, kBoard).size(), 7u);
}

TEST(HexGrid, SuperHexagonMatchesBfsBall) {
  for (HexCoord c : {HexCoord{0, 0}, HexCoord{9, 9}, HexCoord{0, 5}, HexCoord{5, 0}, HexCoord{1, 9}}) {
    EXPECT_EQ(super_hexagon(c, 2, kBoard), oracle::bfs_ball(c, 2, kBoard));
  }
}

TEST(HexGrid, ActionCenters) {
  EXPECT_EQ(action_center(0, 0, kBoard), (HexCoord{0, 0}));
  EXPECT_EQ(action_center(3, 3, kBoard), (HexCoord{5, 5}));
  EXPECT_EQ(action_center(6, 6, kBoard), (HexCoord{9, 9}));
  std::set<std::pair<int, int>> indices;
  for (int i = 0; i < kActionGridSize; ++i)
    for (int j = 0; j < kActionGridSize; ++j) {
      const HexCoord h = action_center(i, j, kBoard);
      EXPECT_TRUE(kBoard.contains(h));
      EXPECT_EQ(h.row, static_cast<int>(std::floor((i + 0.5) * 10 / 7)));
      EXPECT_EQ(h.col, static_cast<int>(std::floor((j + 0.5) * 10 / 7)));
      indices.insert({i, j});
    }
  EXPECT_EQ(indices.size(), 49u);
  EXPECT_THROW(action_center(7, 0, kBoard), CoordinateError);
}

TEST(HexGrid, SmallBoardsAllowDuplicateCenters) {
  const BoardDims small{4, 4};
  std::set<HexCoord> distinct;
  for (int a = 0; a < kActionCount; ++a) {
    const HexCoord h = action_center(a / 7, a % 7, small);
    EXPECT_TRUE(small.contains(h));
    distinct.insert(h);
  }
  EXPECT_LT(distinct.size(), 49u);
}

TEST(HexGrid, ObjectiveAreaComposesCenterAndBall) {
  EXPECT_EQ(objective_area(24, kBoard), super_hexagon({5, 5}, 2, kBoard));
  EXPECT_EQ(objective_area(0, kBoard), oracle::bfs_ball({0, 0}, 2, kBoard));
  EXPECT_THROW(objective_area(49, kBoard), ConfigError);
}

TEST(HexGrid, BoardDiameter) {
  int best = 0;
  for (int a = 0; a < 100; ++a)
    for (int b = 0; b < 100; ++b) best = std::max(best, hex_distance(kBoard.coord(a), kBoard.coord(b)));
  EXPECT_EQ(board_diameter(kBoard), best);
}
