#include "hexhybrid/training.hpp"

#include <memory>

#include "hexhybrid/errors.hpp"
#include "hexhybrid/evaluation.hpp"

namespace hexhybrid {

void TrainConfig::validate() const {
  h.validate();
  hexhybrid::validate(scenario);
  if (cycle < 1) throw ConfigError("cycle must be at least 1");
  if (eval_interval < 1) throw ConfigError("eval_interval must be at least 1");
  if (eval_games < 1) throw ConfigError("eval_games must be at least 1");
  if (arch) arch->validate();
}

TrainConfig default_manager_config() { return TrainConfig{}; }

TrainConfig default_individual_config() {
  TrainConfig c;
  c.eval_interval = 100'000;
  return c;
}

std::uint64_t training_game_seed(std::uint64_t seed, std::int64_t episode) {
  return derive_seed(derive_seed(seed, 0x747261696eULL), static_cast<std::uint64_t>(episode));
}

int ManagerTrainingPolicy::decide(const ManagerDecisionContext& ctx) {
  std::vector<float> obs = ctx.obs.to_float();
  const int id = ctx.manager.manager_id;
  const int action = learner_.act(obs, ctx.rng);
  if (active()) {
    if (auto it = pending_.find(id); it != pending_.end() && ctx.reward) {
      learner_.store({std::move(it->second.obs), it->second.action, *ctx.reward, obs, false});
      ++transitions_;
    }
    learner_.step();
  }
  pending_[id] = {std::move(obs), action};
  return action;
}

void ManagerTrainingPolicy::finish(const ManagerDecisionContext& ctx) {
  auto it = pending_.find(ctx.manager.manager_id);
  if (it == pending_.end()) return;
  if (active() && ctx.reward) {
    learner_.store({std::move(it->second.obs), it->second.action, *ctx.reward, ctx.obs.to_float(), true});
    ++transitions_;
  }
  pending_.erase(it);
}

int UnitTrainingPolicy::decide(const UnitDecisionContext& ctx) {
  std::vector<float> obs = ctx.obs.to_float();
  const int action = learner_.act(obs, ctx.rng, ctx.legal);
  if (active()) {
    if (pending_ && ctx.reward) {
      learner_.store({std::move(pending_->obs), pending_->action, *ctx.reward, obs, false});
      ++transitions_;
    }
    learner_.step();
  }
  pending_ = Pending{std::move(obs), action};
  return action;
}

void UnitTrainingPolicy::finish(const UnitDecisionContext& ctx) {
  if (!pending_) return;
  if (active() && ctx.reward) {
    learner_.store({std::move(pending_->obs), pending_->action, *ctx.reward, ctx.obs.to_float(), true});
    ++transitions_;
  }
  pending_.reset();
}

namespace {

enum class Learned { Manager, Individual };

TrainResult train(const TrainConfig& config, Learned which) {
  config.validate();
  const Architecture arch =
      config.arch ? *config.arch
                  : (which == Learned::Manager ? Architecture::manager() : Architecture::individual(config.scenario.dims));
  const int want_channels = which == Learned::Manager ? kManagerChannels : kIndividualChannels;
  const int want_actions = which == Learned::Manager ? kActionCount : kIndividualActions;
  if (arch.in_channels != want_channels || arch.actions != want_actions) {
    throw ConfigError("architecture does not match the agent's observation/action space");
  }
  const bool coarse = which == Learned::Manager;
  if (coarse && (arch.height != kActionGridSize || arch.width != kActionGridSize)) {
    throw ConfigError("manager network expects a 7x7 input");
  }
  if (!coarse && (arch.height != config.scenario.dims.n_rows || arch.width != config.scenario.dims.n_cols)) {
    throw ConfigError("individual network input must match the board");
  }

  const ScenarioCycle cycle(config.scenario, config.seed, config.cycle);
  DqnLearner learner(QNetwork<float>::initialized(arch, derive_seed(config.seed, 0x6e6574ULL)), config.h,
                     derive_seed(config.seed, 0x6c6561726eULL));
  const std::int64_t budget = config.h.total_budget;

  ManagerTrainingPolicy manager_policy(learner, budget);
  UnitTrainingPolicy unit_policy(learner, budget);
  std::unique_ptr<Agent> learner_agent;
  if (which == Learned::Manager) {
    learner_agent = std::make_unique<HybridAgent>(manager_policy);
  } else {
    learner_agent = std::make_unique<IndividualAgent>(unit_policy);
  }
  ScriptedAgent opponent;

  TrainResult result;
  auto run_eval = [&] {
    MatchupConfig m;
    m.blue.kind = which == Learned::Manager ? AgentKind::Hybrid : AgentKind::Individual;
    m.blue.model = std::make_shared<const QNetwork<float>>(learner.online());
    m.scenario = config.scenario;
    m.seed = config.seed;
    m.cycle = config.cycle;
    m.n_games = config.eval_games;
    m.workers = config.eval_workers;
    const auto games = evaluate_games(m);
    TraceRow row;
    row.step = learner.steps();
    for (const auto& g : games) {
      row.mean_reward += g.blue_reward;
      row.mean_score += g.blue_score;
    }
    row.mean_reward /= static_cast<double>(games.size());
    row.mean_score /= static_cast<double>(games.size());
    result.trace.push_back(row);
    if (config.on_checkpoint) config.on_checkpoint(learner.online(), result.trace);
  };

  run_eval();
  std::int64_t next_eval = config.eval_interval;
  bool interrupted = false;
  while (learner.steps() < budget) {
    if (config.stop && config.stop->load()) {
      interrupted = true;
      break;
    }
    manager_policy.reset();
    unit_policy.reset();
    Rng rng(training_game_seed(config.seed, result.games));
    play_game(cycle.at(result.games), *learner_agent, opponent, rng);
    ++result.games;
    while (learner.steps() >= next_eval && next_eval <= budget) {
      run_eval();
      next_eval += config.eval_interval;
    }
  }
  if (!interrupted && (result.trace.empty() || result.trace.back().step != learner.steps())) run_eval();

  result.model = learner.online();
  result.steps = learner.steps();
  result.updates = learner.updates();
  result.complete = !interrupted;
  return result;
}

}  // namespace

TrainResult train_manager(const TrainConfig& config) { return train(config, Learned::Manager); }
TrainResult train_individual(const TrainConfig& config) { return train(config, Learned::Individual); }

}  // namespace hexhybrid
