#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hexhybrid/dqn.hpp"
#include "hexhybrid/engine.hpp"
#include "hexhybrid/manager.hpp"
#include "hexhybrid/observation.hpp"
#include "hexhybrid/rng.hpp"
#include "hexhybrid/scripted_agent.hpp"

namespace hexhybrid {

// Receives every step of a game; implemented by the replay writer.
class GameRecorder {
 public:
  virtual ~GameRecorder() = default;
  virtual void on_start(const GameState& initial) = 0;
  virtual void on_action(const GameState& after, int unit_id, const ActionCmd& action) = 0;
  virtual void on_end_phase(const GameState& after) = 0;
  virtual void on_manager_decision(const GameState& state, const ManagerState& mgr, int action_index,
                                   std::optional<double> reward) = 0;
  virtual void on_finish(const GameState& final_state) = 0;
};

// An agent controls every unit of one faction: (state, on-move unit, rng) -> action.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin_game(const GameState& state, Faction faction, GameRecorder* recorder) {
    (void)state;
    faction_ = faction;
    recorder_ = recorder;
  }
  virtual void begin_phase(const GameState& state, Rng& rng) {
    (void)state;
    (void)rng;
  }
  virtual ActionCmd act(const GameState& state, int unit_id, Rng& rng) = 0;
  virtual void on_events(const GameState& state, std::span<const GameEvent> events) {
    (void)state;
    (void)events;
  }
  virtual void end_game(const GameState& state, Rng& rng) {
    (void)state;
    (void)rng;
  }

  Faction faction() const { return faction_; }

 protected:
  Faction faction_ = Faction::Blue;
  GameRecorder* recorder_ = nullptr;
};

struct GameResult {
  GameState final_state;
  int blue_score = 0;
  int actions = 0;
};

// Plays until is_terminal. Within a phase, units act in ascending id order.
GameResult play_game(GameState initial, Agent& blue, Agent& red, Rng& rng, GameRecorder* recorder = nullptr);

// Posture assessed once at the start of each phase.
class ScriptedAgent : public Agent {
 public:
  explicit ScriptedAgent(ScriptedParams params = {}) : params_(params) {}
  void begin_phase(const GameState& state, Rng& rng) override;
  ActionCmd act(const GameState& state, int unit_id, Rng& rng) override;

 private:
  ScriptedParams params_;
  Posture posture_ = Posture::Offensive;
};

struct ManagerDecisionContext {
  const GameState& state;
  const ManagerState& manager;
  std::span<const ManagerState> managers;
  const ObsTensor& obs;
  std::optional<double> reward;  // for the objective just completed; empty on the first decision
  bool terminal;
  Rng& rng;
};

class ManagerPolicy {
 public:
  virtual ~ManagerPolicy() = default;
  virtual int decide(const ManagerDecisionContext& ctx) = 0;
  // Game over: closes the option of every manager that has decided at least once.
  virtual void finish(const ManagerDecisionContext& ctx) { (void)ctx; }
};

// Greedy policy over a fixed Q-network.
class GreedyManagerPolicy : public ManagerPolicy {
 public:
  explicit GreedyManagerPolicy(std::shared_ptr<const QNetwork<float>> net);
  int decide(const ManagerDecisionContext& ctx) override;

 private:
  std::shared_ptr<const QNetwork<float>> net_;
};

// Uniformly random objective areas.
class RandomManagerPolicy : public ManagerPolicy {
 public:
  int decide(const ManagerDecisionContext& ctx) override;
};

// RL managers issuing objective areas to scripted subordinates.
class HybridAgent : public Agent {
 public:
  HybridAgent(ManagerPolicy& policy, RewardParams reward = {}, ScriptedParams scripted = {});

  void begin_game(const GameState& state, Faction faction, GameRecorder* recorder) override;
  void begin_phase(const GameState& state, Rng& rng) override;
  ActionCmd act(const GameState& state, int unit_id, Rng& rng) override;
  void on_events(const GameState& state, std::span<const GameEvent> events) override;
  void end_game(const GameState& state, Rng& rng) override;

  const std::vector<ManagerState>& managers() const { return managers_; }
  // Module used for the most recent act() call.
  SubordinateModule last_module() const { return last_module_; }
  std::int64_t decisions() const { return decisions_; }
  double episode_reward() const { return episode_reward_; }

 private:
  ManagerPolicy& policy_;
  RewardParams reward_;
  ScriptedParams scripted_;
  std::vector<ManagerState> managers_;
  CaptureLedger ledger_;
  SubordinateModule last_module_ = SubordinateModule::Hold;
  std::int64_t decisions_ = 0;
  double episode_reward_ = 0.0;
};

// --- individual (per-unit) RL agent -----------------------------------------

// 0: Hold, 1..6: move one hex in HexDirection (a - 1), 7..12: attack the enemy
// on the neighbor in HexDirection (a - 7).
inline constexpr int kIndividualActions = 1 + 2 * kHexDirections;

std::vector<char> individual_legal_mask(const GameState& state, int unit_id);
ActionCmd decode_individual_action(const GameState& state, int unit_id, int action);

struct UnitDecisionContext {
  const GameState& state;
  int unit_id;
  const ObsTensor& obs;
  std::span<const char> legal;
  std::optional<double> reward;  // for the faction's previous decision
  bool terminal;
  Rng& rng;
};

class UnitPolicy {
 public:
  virtual ~UnitPolicy() = default;
  virtual int decide(const UnitDecisionContext& ctx) = 0;
  virtual void finish(const UnitDecisionContext& ctx) { (void)ctx; }
};

class GreedyUnitPolicy : public UnitPolicy {
 public:
  explicit GreedyUnitPolicy(std::shared_ptr<const QNetwork<float>> net);
  int decide(const UnitDecisionContext& ctx) override;

 private:
  std::shared_ptr<const QNetwork<float>> net_;
};

struct IndividualRewardParams {
  double p_g_term = 0.0;
  double b_t = 25.0;
};

// One shared policy picks every friendly unit's action each phase.
class IndividualAgent : public Agent {
 public:
  explicit IndividualAgent(UnitPolicy& policy, IndividualRewardParams reward = {});

  void begin_game(const GameState& state, Faction faction, GameRecorder* recorder) override;
  ActionCmd act(const GameState& state, int unit_id, Rng& rng) override;
  void end_game(const GameState& state, Rng& rng) override;

  std::int64_t decisions() const { return decisions_; }
  double episode_reward() const { return episode_reward_; }

 private:
  double reward_since_last(const GameState& state, bool terminal) const;

  UnitPolicy& policy_;
  IndividualRewardParams reward_;
  std::optional<int> last_score_;
  int last_unit_ = -1;
  std::int64_t decisions_ = 0;
  double episode_reward_ = 0.0;
};

}  // namespace hexhybrid
