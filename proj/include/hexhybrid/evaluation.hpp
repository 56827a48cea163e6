#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hexhybrid/agents.hpp"
#include "hexhybrid/scenario.hpp"
#include "hexhybrid/stats.hpp"

namespace hexhybrid {

enum class AgentKind { Scripted, Hybrid, Individual, RandomHybrid };

struct AgentSpec {
  AgentKind kind = AgentKind::Scripted;
  std::shared_ptr<const QNetwork<float>> model;  // Hybrid and Individual only

  std::string label() const;
};

std::string_view to_string(AgentKind k);
// "scripted", "hybrid", "individual" or "random".
AgentKind parse_agent_kind(std::string_view name);

// An agent plus the policy objects it borrows.
struct AgentInstance {
  std::unique_ptr<ManagerPolicy> manager_policy;
  std::unique_ptr<UnitPolicy> unit_policy;
  std::unique_ptr<Agent> agent;
};

// Throws LoadError when a learned agent has no model or the wrong one.
AgentInstance make_agent(const AgentSpec& spec);

struct MatchupConfig {
  AgentSpec blue;
  AgentSpec red;
  ScenarioConfig scenario{};
  std::uint64_t seed = 1;
  int cycle = 10;
  std::int64_t n_games = 1;
  int workers = 1;
};

struct GameOutcome {
  std::int64_t game_index = 0;
  int scenario_index = 0;
  int blue_score = 0;
  ScoreBreakdown breakdown{};
  double blue_reward = 0.0;  // episode reward of a learned Blue agent
};

// Game rng stream for evaluation game `game_index`.
std::uint64_t evaluation_game_seed(std::uint64_t seed, std::int64_t game_index);

class MatchRunner {
 public:
  explicit MatchRunner(MatchupConfig cfg);

  // Scenario cycle.at(game_index), rng from evaluation_game_seed.
  GameOutcome play(std::int64_t game_index, GameRecorder* recorder = nullptr) const;

  const MatchupConfig& config() const { return cfg_; }
  const ScenarioCycle& cycle() const { return cycle_; }

 private:
  MatchupConfig cfg_;
  ScenarioCycle cycle_;
};

GameOutcome run_match(const MatchupConfig& cfg, std::int64_t game_index);

// Games 0..n_games-1 across cfg.workers threads, returned in game order.
std::vector<GameOutcome> evaluate_games(const MatchupConfig& cfg);

ScoreStats summarize(std::span<const GameOutcome> games);
ScoreStats evaluate(const MatchupConfig& cfg);

std::vector<double> blue_scores(std::span<const GameOutcome> games);

// game_index,scenario_index,blue_score
std::string per_game_csv(std::span<const GameOutcome> games);

}  // namespace hexhybrid
