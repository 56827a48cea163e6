#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hexhybrid/agents.hpp"
#include "hexhybrid/dqn.hpp"
#include "hexhybrid/scenario.hpp"

namespace hexhybrid {

struct TraceRow {
  std::int64_t step = 0;
  double mean_reward = 0.0;
  double mean_score = 0.0;
};

struct TrainConfig {
  ScenarioConfig scenario{};
  std::uint64_t seed = 1;
  int cycle = 10;
  Hyperparams h{};  // h.total_budget is the number of agent steps to train
  std::int64_t eval_interval = 10'000;
  std::int64_t eval_games = 100;
  int eval_workers = 1;
  std::optional<Architecture> arch;  // defaults to the agent's standard architecture
  // Called after every evaluation with the current online network.
  std::function<void(const QNetwork<float>&, std::span<const TraceRow>)> on_checkpoint;
  const std::atomic<bool>* stop = nullptr;  // checked between games

  void validate() const;
};

TrainConfig default_manager_config();
TrainConfig default_individual_config();

struct TrainResult {
  QNetwork<float> model;
  std::vector<TraceRow> trace;
  std::int64_t steps = 0;
  std::int64_t updates = 0;
  std::int64_t games = 0;
  bool complete = false;
};

// Shared epsilon-greedy policy for every same-faction manager. Each decision
// is one agent step; a transition joins a manager's consecutive decisions.
class ManagerTrainingPolicy : public ManagerPolicy {
 public:
  ManagerTrainingPolicy(DqnLearner& learner, std::int64_t budget) : learner_(learner), budget_(budget) {}

  int decide(const ManagerDecisionContext& ctx) override;
  void finish(const ManagerDecisionContext& ctx) override;
  void reset() { pending_.clear(); }

  std::int64_t transitions() const { return transitions_; }

 private:
  struct Pending {
    std::vector<float> obs;
    int action;
  };
  bool active() const { return learner_.steps() < budget_; }

  DqnLearner& learner_;
  std::int64_t budget_;
  std::map<int, Pending> pending_;
  std::int64_t transitions_ = 0;
};

// Same for the per-unit agent: one pending transition per faction.
class UnitTrainingPolicy : public UnitPolicy {
 public:
  UnitTrainingPolicy(DqnLearner& learner, std::int64_t budget) : learner_(learner), budget_(budget) {}

  int decide(const UnitDecisionContext& ctx) override;
  void finish(const UnitDecisionContext& ctx) override;
  void reset() { pending_.reset(); }

  std::int64_t transitions() const { return transitions_; }

 private:
  struct Pending {
    std::vector<float> obs;
    int action;
  };
  bool active() const { return learner_.steps() < budget_; }

  DqnLearner& learner_;
  std::int64_t budget_;
  std::optional<Pending> pending_;
  std::int64_t transitions_ = 0;
};

// Blue learner against the scripted Red agent on the scenario cycle.
TrainResult train_manager(const TrainConfig& config);
TrainResult train_individual(const TrainConfig& config);

// Game rng stream of training episode k.
std::uint64_t training_game_seed(std::uint64_t seed, std::int64_t episode);

}  // namespace hexhybrid
