#include "hexhybrid/manager.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {

bool Objective::contains(HexCoord h) const { return std::binary_search(area.begin(), area.end(), h); }

bool ManagerState::owns(int unit_id) const {
  return std::find(unit_ids.begin(), unit_ids.end(), unit_id) != unit_ids.end();
}

std::vector<ManagerState> assign_managers(const GameState& state, Faction faction) {
  std::vector<int> ids;
  for (const Unit& u : state.units) {
    if (u.faction == faction) ids.push_back(u.id);
  }
  std::sort(ids.begin(), ids.end());
  if (ids.size() % kUnitsPerManager != 0) {
    throw ConfigError(std::string(to_string(faction)) + " has " + std::to_string(ids.size()) +
                      " units, not a multiple of " + std::to_string(kUnitsPerManager));
  }
  std::vector<ManagerState> out;
  for (std::size_t k = 0; k < ids.size(); k += kUnitsPerManager) {
    ManagerState m;
    m.manager_id = static_cast<int>(out.size());
    m.faction = faction;
    m.unit_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(k), ids.begin() + static_cast<std::ptrdiff_t>(k + kUnitsPerManager));
    for (int id : m.unit_ids) {
      m.s_m_o += kFullStrength;
      const Unit& u = state.unit(id);
      if (u.alive) m.s_m_c += u.strength;
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool is_dormant(const ManagerState& mgr, const GameState& state) {
  return std::none_of(mgr.unit_ids.begin(), mgr.unit_ids.end(), [&](int id) { return state.unit(id).alive; });
}

bool needs_decision(const ManagerState& mgr, const GameState& state) {
  if (is_dormant(mgr, state)) return false;
  if (!mgr.objective) return true;
  return std::all_of(mgr.unit_ids.begin(), mgr.unit_ids.end(), [&](int id) {
    const Unit& u = state.unit(id);
    return !u.alive || mgr.objective->contains(u.pos);
  });
}

ManagerState set_objective(const ManagerState& mgr, int action_index, BoardDims dims) {
  ManagerState next = mgr;
  next.objective = Objective{action_index, objective_area(action_index, dims)};
  return next;
}

double manager_reward(const ManagerState& mgr, std::span<const ManagerState> others, bool terminal,
                      const RewardParams& params) {
  if (mgr.s_m_o <= 0) throw ConfigError("manager " + std::to_string(mgr.manager_id) + " has no original strength");
  bool duplicate = false;
  if (mgr.objective) {
    for (const ManagerState& o : others) {
      if (o.manager_id == mgr.manager_id || o.faction != mgr.faction || !o.objective) continue;
      duplicate = duplicate || o.objective->action_index == mgr.objective->action_index;
    }
  }
  const double penalty = duplicate ? params.p_g : 0.0;
  const double ratio = static_cast<double>(mgr.s_m_c) / mgr.s_m_o;
  return std::max(mgr.r_m() - penalty, 0.0) * ratio + (terminal ? params.b_t : 0.0);
}

void CaptureLedger::record_capture(HexCoord city, int unit_id) {
  for (auto& [hex, id] : captures_) {
    if (hex == city) {
      id = unit_id;
      return;
    }
  }
  captures_.emplace_back(city, unit_id);
}

std::optional<int> CaptureLedger::capturer(HexCoord city) const {
  for (const auto& [hex, id] : captures_) {
    if (hex == city) return id;
  }
  return std::nullopt;
}

void attribute_event(const GameEvent& event, const GameState& state, std::span<ManagerState> managers,
                     CaptureLedger& ledger) {
  const int n_units = static_cast<int>(state.units.size());
  auto check = [&](int id) {
    if (id < 0 || id >= n_units) throw IllegalActionError("event references unknown unit " + std::to_string(id));
  };
  switch (event.kind) {
    case EventKind::Damage:
    case EventKind::Removal:
      check(event.actor_id);
      check(event.target_id);
      for (ManagerState& m : managers) {
        if (m.owns(event.actor_id)) m.combat_dealt += event.points;
        if (m.owns(event.target_id)) m.combat_suffered += event.points;
      }
      break;
    case EventKind::Capture:
      check(event.actor_id);
      ledger.record_capture(event.hex, event.actor_id);
      break;
    case EventKind::CityPoints:
      if (const auto unit_id = ledger.capturer(event.hex)) {
        for (ManagerState& m : managers) {
          if (m.faction == event.faction && m.owns(*unit_id)) m.city_points += event.points;
        }
      }
      break;
  }
}

void refresh_strength(std::span<ManagerState> managers, const GameState& state) {
  for (ManagerState& m : managers) {
    m.s_m_c = 0;
    for (int id : m.unit_ids) {
      const Unit& u = state.unit(id);
      if (u.alive) m.s_m_c += u.strength;
    }
  }
}

GameState culled_state(const GameState& state, const ManagerState& mgr) {
  if (!mgr.objective) throw ConfigError("culled state requires an objective");
  const Objective& obj = *mgr.objective;
  GameState view = state;
  for (Unit& u : view.units) {
    if (u.alive && !obj.contains(u.pos) && !mgr.owns(u.id)) u.alive = false;
  }
  std::erase_if(view.cities, [&](const City& c) { return !obj.contains(c.hex); });
  for (int idx = 0; idx < view.dims.cell_count(); ++idx) {
    if (!obj.contains(view.dims.coord(idx))) view.terrain[static_cast<std::size_t>(idx)] = Terrain::Water;
  }
  return view;
}

SubordinateDecision subordinate_decision(const GameState& state, int unit_id, const ManagerState& mgr, Rng& rng,
                                         const ScriptedParams& params) {
  if (!mgr.objective) throw ConfigError("subordinate of manager " + std::to_string(mgr.manager_id) + " has no objective");
  const auto targets = attackable_enemies(state, unit_id);
  if (!targets.empty()) {
    const int t = targets[static_cast<std::size_t>(rng.uniform_index(static_cast<int>(targets.size())))];
    return {ActionCmd::attack(t), SubordinateModule::Attack};
  }
  const Unit& unit = state.unit(unit_id);
  const Objective& obj = *mgr.objective;
  if (!obj.contains(unit.pos)) {
    auto area_distance = [&](HexCoord h) {
      int best = std::numeric_limits<int>::max();
      for (const HexCoord& a : obj.area) best = std::min(best, hex_distance(h, a));
      return best;
    };
    const int here = area_distance(unit.pos);
    const HexCoord* best = nullptr;
    int best_dist = std::numeric_limits<int>::max();
    const auto dests = legal_move_destinations(state, unit_id);
    for (const HexCoord& h : dests) {
      const int d = area_distance(h);
      if (d < best_dist) {
        best_dist = d;
        best = &h;
      }
    }
    if (best == nullptr || best_dist > here) return {ActionCmd::hold(), SubordinateModule::Hold};
    return {ActionCmd::move(*best), SubordinateModule::Move};
  }
  const GameState view = culled_state(state, mgr);
  return {choose_action(view, unit_id, assess_posture(view, unit.faction), rng, params), SubordinateModule::Fight};
}

ActionCmd subordinate_action(const GameState& state, int unit_id, const ManagerState& mgr, Rng& rng,
                             const ScriptedParams& params) {
  return subordinate_decision(state, unit_id, mgr, rng, params).action;
}

}  // namespace hexhybrid
