#include "hexhybrid/agents.hpp"

#include <algorithm>
#include <string>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {

GameResult play_game(GameState initial, Agent& blue, Agent& red, Rng& rng, GameRecorder* recorder) {
  GameResult result{std::move(initial), 0, 0};
  GameState& state = result.final_state;
  if (recorder) recorder->on_start(state);
  blue.begin_game(state, Faction::Blue, recorder);
  red.begin_game(state, Faction::Red, recorder);
  EventLog events;
  auto dispatch = [&] {
    if (events.empty()) return;
    blue.on_events(state, events);
    red.on_events(state, events);
  };
  while (!is_terminal(state)) {
    Agent& agent = state.on_move == Faction::Blue ? blue : red;
    agent.begin_phase(state, rng);
    for (std::size_t i = 0; i < state.units.size(); ++i) {
      const Unit& u = state.units[i];
      if (!u.alive || u.faction != state.on_move || u.acted) continue;
      const int id = u.id;
      const ActionCmd cmd = agent.act(state, id, rng);
      events.clear();
      apply_action_in_place(state, id, cmd, &events);
      ++result.actions;
      if (recorder) recorder->on_action(state, id, cmd);
      dispatch();
      if (is_terminal(state)) break;  // elimination ends the game at once
    }
    if (is_terminal(state)) break;
    events.clear();
    end_phase_in_place(state, &events);
    if (recorder) recorder->on_end_phase(state);
    dispatch();
  }
  blue.end_game(state, rng);
  red.end_game(state, rng);
  if (recorder) recorder->on_finish(state);
  result.blue_score = total_score(state);
  return result;
}

void ScriptedAgent::begin_phase(const GameState& state, Rng& rng) {
  (void)rng;
  posture_ = assess_posture(state, faction_);
}

ActionCmd ScriptedAgent::act(const GameState& state, int unit_id, Rng& rng) {
  return choose_action(state, unit_id, posture_, rng, params_);
}

GreedyManagerPolicy::GreedyManagerPolicy(std::shared_ptr<const QNetwork<float>> net) : net_(std::move(net)) {
  if (!net_ || net_->arch().actions != kActionCount || net_->arch().in_channels != kManagerChannels) {
    throw LoadError("manager policy needs a 17-channel, 49-action network");
  }
}

int GreedyManagerPolicy::decide(const ManagerDecisionContext& ctx) {
  return argmax(net_->q_values(ctx.obs.to_float()));
}

int RandomManagerPolicy::decide(const ManagerDecisionContext& ctx) { return ctx.rng.uniform_index(kActionCount); }

HybridAgent::HybridAgent(ManagerPolicy& policy, RewardParams reward, ScriptedParams scripted)
    : policy_(policy), reward_(reward), scripted_(scripted) {}

void HybridAgent::begin_game(const GameState& state, Faction faction, GameRecorder* recorder) {
  Agent::begin_game(state, faction, recorder);
  managers_ = assign_managers(state, faction);
  ledger_ = CaptureLedger{};
  decisions_ = 0;
  episode_reward_ = 0.0;
}

void HybridAgent::begin_phase(const GameState& state, Rng& rng) {
  refresh_strength(managers_, state);
  for (std::size_t i = 0; i < managers_.size(); ++i) {
    if (!needs_decision(managers_[i], state)) continue;
    const ObsTensor obs = manager_observation(state, managers_[i], managers_);
    std::optional<double> reward;
    if (managers_[i].objective) reward = manager_reward(managers_[i], managers_, false, reward_);
    if (reward) episode_reward_ += *reward;
    const int action = policy_.decide({state, managers_[i], managers_, obs, reward, false, rng});
    managers_[i] = set_objective(managers_[i], action, state.dims);
    ++managers_[i].decisions_made;
    ++decisions_;
    if (recorder_) recorder_->on_manager_decision(state, managers_[i], action, reward);
  }
}

ActionCmd HybridAgent::act(const GameState& state, int unit_id, Rng& rng) {
  for (const ManagerState& m : managers_) {
    if (!m.owns(unit_id)) continue;
    const auto decision = subordinate_decision(state, unit_id, m, rng, scripted_);
    last_module_ = decision.module;
    return decision.action;
  }
  throw IllegalActionError("unit " + std::to_string(unit_id) + " has no manager");
}

void HybridAgent::on_events(const GameState& state, std::span<const GameEvent> events) {
  for (const GameEvent& e : events) attribute_event(e, state, managers_, ledger_);
  refresh_strength(managers_, state);
}

void HybridAgent::end_game(const GameState& state, Rng& rng) {
  refresh_strength(managers_, state);
  for (const ManagerState& m : managers_) {
    if (m.decisions_made == 0) continue;
    const ObsTensor obs = manager_observation(state, m, managers_);
    const double reward = manager_reward(m, managers_, true, reward_);
    episode_reward_ += reward;
    policy_.finish({state, m, managers_, obs, reward, true, rng});
  }
}

std::vector<char> individual_legal_mask(const GameState& state, int unit_id) {
  std::vector<char> mask(kIndividualActions, 0);
  mask[0] = 1;
  const Unit& u = state.unit(unit_id);
  const auto dests = legal_move_destinations(state, unit_id);
  const int range = unit_stats(u.type).attack_range;
  for (int d = 0; d < kHexDirections; ++d) {
    const auto n = hex_neighbor(u.pos, static_cast<HexDirection>(d), state.dims);
    if (!n) continue;
    if (std::binary_search(dests.begin(), dests.end(), *n)) mask[static_cast<std::size_t>(1 + d)] = 1;
    const Unit* other = state.unit_at(*n);
    if (other && other->faction != u.faction && range >= 1) mask[static_cast<std::size_t>(1 + kHexDirections + d)] = 1;
  }
  return mask;
}

ActionCmd decode_individual_action(const GameState& state, int unit_id, int action) {
  if (action < 0 || action >= kIndividualActions) throw IllegalActionError("individual action out of range");
  if (action == 0) return ActionCmd::hold();
  const Unit& u = state.unit(unit_id);
  const int d = (action - 1) % kHexDirections;
  const auto n = hex_neighbor(u.pos, static_cast<HexDirection>(d), state.dims);
  if (!n) throw IllegalActionError("direction leaves the board");
  if (action <= kHexDirections) return ActionCmd::move(*n);
  const Unit* target = state.unit_at(*n);
  if (!target) throw IllegalActionError("no unit to attack in that direction");
  return ActionCmd::attack(target->id);
}

GreedyUnitPolicy::GreedyUnitPolicy(std::shared_ptr<const QNetwork<float>> net) : net_(std::move(net)) {
  if (!net_ || net_->arch().actions != kIndividualActions || net_->arch().in_channels != kIndividualChannels) {
    throw LoadError("individual policy needs an 18-channel, 13-action network");
  }
}

int GreedyUnitPolicy::decide(const UnitDecisionContext& ctx) {
  const auto q = net_->q_values(ctx.obs.to_float());
  return select_action(q, ctx.legal, 0.0, ctx.rng);
}

IndividualAgent::IndividualAgent(UnitPolicy& policy, IndividualRewardParams reward) : policy_(policy), reward_(reward) {}

void IndividualAgent::begin_game(const GameState& state, Faction faction, GameRecorder* recorder) {
  Agent::begin_game(state, faction, recorder);
  last_score_.reset();
  last_unit_ = -1;
  decisions_ = 0;
  episode_reward_ = 0.0;
}

double IndividualAgent::reward_since_last(const GameState& state, bool terminal) const {
  IndividualReward ir;
  ir.r_raw = static_cast<double>(total_score(state, faction_) - *last_score_);
  ir.s_c = state.alive_strength(faction_);
  ir.s_o = state.original_strength(faction_);
  ir.p_g_term = reward_.p_g_term;
  ir.b_t = reward_.b_t;
  return individual_reward(ir, terminal);
}

ActionCmd IndividualAgent::act(const GameState& state, int unit_id, Rng& rng) {
  const ObsTensor obs = individual_observation(state, unit_id);
  const auto mask = individual_legal_mask(state, unit_id);
  std::optional<double> reward;
  if (last_score_) {
    reward = reward_since_last(state, false);
    episode_reward_ += *reward;
  }
  const int a = policy_.decide({state, unit_id, obs, mask, reward, false, rng});
  if (!mask[static_cast<std::size_t>(a)]) throw IllegalActionError("policy chose a masked action");
  last_score_ = total_score(state, faction_);
  last_unit_ = unit_id;
  ++decisions_;
  return decode_individual_action(state, unit_id, a);
}

void IndividualAgent::end_game(const GameState& state, Rng& rng) {
  if (!last_score_) return;
  const double reward = reward_since_last(state, true);
  episode_reward_ += reward;
  const ObsTensor obs = individual_observation(state, last_unit_);
  const std::vector<char> mask(kIndividualActions, 0);
  policy_.finish({state, last_unit_, obs, mask, reward, true, rng});
}

}  // namespace hexhybrid
