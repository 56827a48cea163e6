#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hexhybrid/engine.hpp"
#include "hexhybrid/rng.hpp"
#include "hexhybrid/scripted_agent.hpp"

namespace hexhybrid {

inline constexpr int kUnitsPerManager = 3;

struct Objective {
  int action_index = 0;
  std::vector<HexCoord> area;  // sorted

  bool contains(HexCoord h) const;
  bool operator==(const Objective&) const = default;
};

// Bookkeeping for one RL manager and its fixed roster of subordinates.
// r_m() is cumulative since game start: damage and removal points dealt by the
// roster, minus those suffered by it, plus city points from cities the roster
// captured.
struct ManagerState {
  int manager_id = 0;
  Faction faction = Faction::Blue;
  std::vector<int> unit_ids;
  std::optional<Objective> objective;
  int s_m_o = 0;  // original roster strength
  int s_m_c = 0;  // current alive roster strength
  int combat_dealt = 0;
  int combat_suffered = 0;
  int city_points = 0;
  int decisions_made = 0;

  int r_m() const { return combat_dealt - combat_suffered + city_points; }
  bool owns(int unit_id) const;
  bool operator==(const ManagerState&) const = default;
};

struct RewardParams {
  double p_g = 25.0;    // duplicate-objective penalty
  double b_t = 25.0;    // terminal bonus
  double gamma = 0.93;  // discount per manager decision
};

// Consecutive triples of the faction's units in ascending id.
std::vector<ManagerState> assign_managers(const GameState& state, Faction faction);

// Objective unset, or at least one roster unit alive and all alive roster units
// inside the objective area. A manager whose roster is gone never decides.
bool needs_decision(const ManagerState& mgr, const GameState& state);

bool is_dormant(const ManagerState& mgr, const GameState& state);

ManagerState set_objective(const ManagerState& mgr, int action_index, BoardDims dims);

// max(R_m - P_g, 0) * S_mc / S_mo + B_t * I_t, with P_g charged when the
// manager's current action index equals another same-faction manager's.
double manager_reward(const ManagerState& mgr, std::span<const ManagerState> others, bool terminal,
                      const RewardParams& params = {});

// Tracks which unit most recently captured each city so per-phase city points
// can be credited to that unit's manager.
class CaptureLedger {
 public:
  void record_capture(HexCoord city, int unit_id);
  std::optional<int> capturer(HexCoord city) const;

 private:
  std::vector<std::pair<HexCoord, int>> captures_;
};

// Credits one engine event to the managers whose rosters it involves.
// Throws IllegalActionError for events naming units absent from the state.
void attribute_event(const GameEvent& event, const GameState& state, std::span<ManagerState> managers,
                     CaptureLedger& ledger);

// Refreshes s_m_c from the game state.
void refresh_strength(std::span<ManagerState> managers, const GameState& state);

// View of the state restricted to the objective area: units outside it (other
// than the manager's roster) are removed, cities outside it are dropped, and
// terrain outside it becomes impassable.
GameState culled_state(const GameState& state, const ManagerState& mgr);

enum class SubordinateModule { Attack, Move, Fight, Hold };

struct SubordinateDecision {
  ActionCmd action;
  SubordinateModule module;
};

// Attack when an enemy is in range; otherwise the Move module steps toward the
// objective area, or, inside it, the Fight module runs the scripted agent on
// the culled state.
SubordinateDecision subordinate_decision(const GameState& state, int unit_id, const ManagerState& mgr, Rng& rng,
                                         const ScriptedParams& params = {});

ActionCmd subordinate_action(const GameState& state, int unit_id, const ManagerState& mgr, Rng& rng,
                             const ScriptedParams& params = {});

}  // namespace hexhybrid
