#include "hexhybrid/evaluation.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {

std::string_view to_string(AgentKind k) {
  switch (k) {
    case AgentKind::Scripted: return "scripted";
    case AgentKind::Hybrid: return "hybrid";
    case AgentKind::Individual: return "individual";
    case AgentKind::RandomHybrid: return "random";
  }
  return "?";
}

AgentKind parse_agent_kind(std::string_view name) {
  for (AgentKind k : {AgentKind::Scripted, AgentKind::Hybrid, AgentKind::Individual, AgentKind::RandomHybrid}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown agent '" + std::string(name) + "'");
}

std::string AgentSpec::label() const { return std::string(to_string(kind)); }

AgentInstance make_agent(const AgentSpec& spec) {
  AgentInstance a;
  switch (spec.kind) {
    case AgentKind::Scripted:
      a.agent = std::make_unique<ScriptedAgent>();
      break;
    case AgentKind::Hybrid:
      if (!spec.model) throw LoadError("hybrid agent needs a manager model");
      a.manager_policy = std::make_unique<GreedyManagerPolicy>(spec.model);
      a.agent = std::make_unique<HybridAgent>(*a.manager_policy);
      break;
    case AgentKind::RandomHybrid:
      a.manager_policy = std::make_unique<RandomManagerPolicy>();
      a.agent = std::make_unique<HybridAgent>(*a.manager_policy);
      break;
    case AgentKind::Individual:
      if (!spec.model) throw LoadError("individual agent needs a model");
      a.unit_policy = std::make_unique<GreedyUnitPolicy>(spec.model);
      a.agent = std::make_unique<IndividualAgent>(*a.unit_policy);
      break;
  }
  return a;
}

std::uint64_t evaluation_game_seed(std::uint64_t seed, std::int64_t game_index) {
  return derive_seed(derive_seed(seed, 0x6576616cULL), static_cast<std::uint64_t>(game_index));
}

MatchRunner::MatchRunner(MatchupConfig cfg) : cfg_(std::move(cfg)), cycle_(cfg_.scenario, cfg_.seed, cfg_.cycle) {
  if (cfg_.n_games < 1) throw ConfigError("n_games must be at least 1");
  // Surface model problems before any game runs.
  make_agent(cfg_.blue);
  make_agent(cfg_.red);
}

GameOutcome MatchRunner::play(std::int64_t game_index, GameRecorder* recorder) const {
  AgentInstance blue = make_agent(cfg_.blue);
  AgentInstance red = make_agent(cfg_.red);
  Rng rng(evaluation_game_seed(cfg_.seed, game_index));
  const GameResult r = play_game(cycle_.at(game_index), *blue.agent, *red.agent, rng, recorder);
  GameOutcome out;
  out.game_index = game_index;
  out.scenario_index = cycle_.slot(game_index);
  out.blue_score = r.blue_score;
  out.breakdown = r.final_state.score;
  if (auto* h = dynamic_cast<HybridAgent*>(blue.agent.get())) out.blue_reward = h->episode_reward();
  if (auto* i = dynamic_cast<IndividualAgent*>(blue.agent.get())) out.blue_reward = i->episode_reward();
  return out;
}

GameOutcome run_match(const MatchupConfig& cfg, std::int64_t game_index) { return MatchRunner(cfg).play(game_index); }

std::vector<GameOutcome> evaluate_games(const MatchupConfig& cfg) {
  const MatchRunner runner(cfg);
  std::vector<GameOutcome> out(static_cast<std::size_t>(cfg.n_games));
  const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(cfg.n_games)));
  if (workers == 1) {
    for (std::int64_t g = 0; g < cfg.n_games; ++g) out[static_cast<std::size_t>(g)] = runner.play(g);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::int64_t g = next++; g < cfg.n_games; g = next++) out[static_cast<std::size_t>(g)] = runner.play(g);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = cfg.n_games;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> blue_scores(std::span<const GameOutcome> games) {
  std::vector<double> xs;
  xs.reserve(games.size());
  for (const auto& g : games) xs.push_back(g.blue_score);
  return xs;
}

ScoreStats summarize(std::span<const GameOutcome> games) {
  const auto xs = blue_scores(games);
  return score_stats(xs);
}

ScoreStats evaluate(const MatchupConfig& cfg) {
  const auto games = evaluate_games(cfg);
  return summarize(games);
}

std::string per_game_csv(std::span<const GameOutcome> games) {
  std::ostringstream out;
  out << "game_index,scenario_index,blue_score\n";
  for (const auto& g : games) out << g.game_index << ',' << g.scenario_index << ',' << g.blue_score << '\n';
  return out.str();
}

}  // namespace hexhybrid
