#include <gtest/gtest.h>

#include <numeric>

#include "hexhybrid/manager.hpp"
#include "hexhybrid/observation.hpp"
#include "hexhybrid/scenario.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hexhybrid;
using support::add_city;
using support::add_unit;
using support::blank;

namespace {

ObsTensor random_tensor(int c, int h, int w, Rng& rng) {
  ObsTensor t(c, h, w);
  for (double& v : t.data) v = rng.uniform(-1.0, 1.0);
  return t;
}

double channel_sum(const ObsTensor& t, int c) {
  const auto ch = t.channel(c);
  return std::accumulate(ch.begin(), ch.end(), 0.0);
}

}  // namespace

TEST(Observation, UniformBoardSpreadsEvenly) {
  ObsTensor t(1, 10, 10);
  std::fill(t.data.begin(), t.data.end(), 1.0);
  const ObsTensor a = coarse_abstract(t, 7, 7);
  for (double v : a.data) EXPECT_NEAR(v, 100.0 / 49.0, 1e-12);
}

TEST(Observation, AbstractionMatchesBruteForceAreas) {
  Rng rng(5);
  for (auto [h, w] : {std::pair{10, 10}, std::pair{7, 7}, std::pair{13, 9}, std::pair{5, 6}}) {
    const ObsTensor t = random_tensor(3, h, w, rng);
    const ObsTensor a = coarse_abstract(t, 7, 7);
    for (int c = 0; c < 3; ++c) {
      const std::vector<double> in(t.channel(c).begin(), t.channel(c).end());
      const auto expected = oracle::area_abstract(in, h, w, 7, 7);
      for (int k = 0; k < 49; ++k) EXPECT_NEAR(a.channel(c)[static_cast<std::size_t>(k)], expected[static_cast<std::size_t>(k)], 1e-12);
    }
  }
}

TEST(Observation, IdentityOnSevenBySeven) {
  Rng rng(2);
  const ObsTensor t = random_tensor(2, 7, 7, rng);
  const ObsTensor a = coarse_abstract(t, 7, 7);
  for (std::size_t i = 0; i < t.data.size(); ++i) EXPECT_NEAR(a.data[i], t.data[i], 1e-15);
}

TEST(Observation, MassConservationAndLinearity) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const ObsTensor x = random_tensor(17, 10, 10, rng), y = random_tensor(17, 10, 10, rng);
    const double alpha = rng.uniform(-2, 2), beta = rng.uniform(-2, 2);
    ObsTensor mix(17, 10, 10);
    for (std::size_t i = 0; i < mix.data.size(); ++i) mix.data[i] = alpha * x.data[i] + beta * y.data[i];
    const ObsTensor ax = coarse_abstract(x, 7, 7), ay = coarse_abstract(y, 7, 7), am = coarse_abstract(mix, 7, 7);
    for (int c = 0; c < 17; ++c) EXPECT_NEAR(channel_sum(ax, c), channel_sum(x, c), 1e-12);
    for (std::size_t i = 0; i < am.data.size(); ++i) EXPECT_NEAR(am.data[i], alpha * ax.data[i] + beta * ay.data[i], 1e-12);
  }
}

TEST(Observation, BaseChannelLayout) {
  GameState s = blank();
  add_city(s, {4, 4}, Faction::Blue);
  add_city(s, {4, 5}, Faction::Red);
  support::set_terrain(s, {0, 9}, Terrain::Water);
  add_unit(s, Faction::Blue, {9, 9}, 80);
  add_unit(s, Faction::Red, {0, 0}, 60, UnitType::Artillery);
  s.phase = 10;
  s.score = {500, 0, 0, 0};
  const ObsTensor b = base_channels(s);
  EXPECT_EQ(b.channels, kBaseChannels);
  EXPECT_DOUBLE_EQ(b.at(0, 9, 9), 0.8);
  EXPECT_DOUBLE_EQ(b.at(1, 0, 0), 0.6);
  EXPECT_DOUBLE_EQ(b.at(2, 9, 9), 1.0);
  EXPECT_DOUBLE_EQ(b.at(5, 0, 0), 1.0);
  EXPECT_DOUBLE_EQ(b.at(6, 5, 5), 1.0);              // Clear
  EXPECT_DOUBLE_EQ(b.at(7, 0, 9), 1.0);              // Water
  EXPECT_DOUBLE_EQ(b.at(9, 4, 4), 1.0);              // Urban
  EXPECT_DOUBLE_EQ(b.at(11, 4, 4), 1.0);
  EXPECT_DOUBLE_EQ(b.at(12, 4, 5), 1.0);
  EXPECT_DOUBLE_EQ(b.at(13, 3, 3), 0.25);
  EXPECT_DOUBLE_EQ(b.at(14, 7, 2), 0.5);
  // Exactly one terrain flag per hex.
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c) {
      double sum = 0;
      for (int k = 6; k < 11; ++k) sum += b.at(k, r, c);
      EXPECT_EQ(sum, 1.0);
    }
  const ObsTensor red = base_channels(s, Faction::Red);
  EXPECT_DOUBLE_EQ(red.at(0, 0, 0), 0.6);
  EXPECT_DOUBLE_EQ(red.at(11, 4, 5), 1.0);
  EXPECT_DOUBLE_EQ(red.at(14, 0, 0), -0.5);
  s.score = {5000, 0, 0, 0};
  EXPECT_DOUBLE_EQ(base_channels(s).at(14, 0, 0), 1.0);
}

TEST(Observation, ManagerObservationShapeAndMass) {
  const GameState s = generate(ScenarioConfig{}, 4);
  auto ms = assign_managers(s, Faction::Blue);
  ms[1] = set_objective(ms[1], 10, s.dims);
  const ObsTensor o = manager_observation(s, ms[0], ms);
  EXPECT_EQ(o.channels, 17);
  EXPECT_EQ(o.height, 7);
  EXPECT_EQ(o.width, 7);
  EXPECT_NEAR(channel_sum(o, 0), 3.0, 1e-12);
  EXPECT_NEAR(channel_sum(o, 1), static_cast<double>(ms[1].objective->area.size()), 1e-12);
  const ObsTensor base = coarse_abstract(base_channels(s), 7, 7);
  for (int c = 0; c < kBaseChannels; ++c)
    for (std::size_t k = 0; k < 49; ++k) EXPECT_NEAR(o.channel(c + 2)[k], base.channel(c)[k], 1e-12);
  // Its own objective is not shown in channel 1.
  const ObsTensor o1 = manager_observation(s, ms[1], ms);
  EXPECT_EQ(channel_sum(o1, 1), 0.0);
}

TEST(Observation, IndividualObservation) {
  GameState s = blank();
  const int u = add_unit(s, Faction::Blue, {5, 5});
  add_unit(s, Faction::Blue, {9, 9});
  add_unit(s, Faction::Red, {0, 0});
  support::set_terrain(s, hex_step({5, 5}, HexDirection::East), Terrain::Water);
  const ObsTensor o = individual_observation(s, u);
  EXPECT_EQ(o.channels, 18);
  EXPECT_EQ(o.height, 10);
  EXPECT_DOUBLE_EQ(channel_sum(o, 0), 1.0);
  EXPECT_DOUBLE_EQ(o.at(0, 5, 5), 1.0);
  EXPECT_DOUBLE_EQ(channel_sum(o, 1), 2.0);
  EXPECT_DOUBLE_EQ(channel_sum(o, 2), 5.0);
  const ObsTensor base = base_channels(s);
  for (int c = 0; c < kBaseChannels; ++c)
    for (std::size_t k = 0; k < 100; ++k) EXPECT_EQ(o.channel(c + 3)[k], base.channel(c)[k]);
  EXPECT_FALSE(dump_text(o).empty());
}
