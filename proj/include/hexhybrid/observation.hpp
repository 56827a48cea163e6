#pragma once

#include <span>
#include <string>
#include <vector>

#include "hexhybrid/engine.hpp"
#include "hexhybrid/manager.hpp"

namespace hexhybrid {

// channels x height x width, row-major by (channel, row, col).
struct ObsTensor {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  ObsTensor() = default;
  ObsTensor(int c, int h, int w) : channels(c), height(h), width(w), data(static_cast<std::size_t>(c) * h * w, 0.0) {}

  double& at(int c, int i, int j) { return data[(static_cast<std::size_t>(c) * height + i) * width + j]; }
  double at(int c, int i, int j) const { return data[(static_cast<std::size_t>(c) * height + i) * width + j]; }
  std::span<double> channel(int c) {
    return {data.data() + static_cast<std::size_t>(c) * height * width, static_cast<std::size_t>(height) * width};
  }
  std::span<const double> channel(int c) const {
    return {data.data() + static_cast<std::size_t>(c) * height * width, static_cast<std::size_t>(height) * width};
  }
  std::vector<float> to_float() const { return {data.begin(), data.end()}; }

  bool operator==(const ObsTensor&) const = default;
};

inline constexpr int kBaseChannels = 15;
inline constexpr int kManagerChannels = 17;
inline constexpr int kIndividualChannels = 18;

struct ObservationParams {
  double score_scale = 1000.0;
};

// Shared channel stack: own health, enemy health, 4 unit types, 5 terrains,
// own city owner, enemy city owner, phase fraction, clamped score. With the
// default Blue perspective "own" is Blue and the score is Blue's.
ObsTensor base_channels(const GameState& state, Faction perspective = Faction::Blue,
                        const ObservationParams& params = {});

// Area-weighted reduction of every channel onto an out_h x out_w grid;
// per-channel sums are preserved.
ObsTensor coarse_abstract(const ObsTensor& t, int out_h, int out_w);

// 17 x 7 x 7: own roster, other managers' objective areas, base channels.
ObsTensor manager_observation(const GameState& state, const ManagerState& mgr,
                              std::span<const ManagerState> all_managers, const ObservationParams& params = {});

// 18 x n x m: on-move unit, friendly units yet to act, legal move targets, base channels.
ObsTensor individual_observation(const GameState& state, int unit_id, const ObservationParams& params = {});

// One text grid per channel, for golden files and debugging.
std::string dump_text(const ObsTensor& t);

}  // namespace hexhybrid
