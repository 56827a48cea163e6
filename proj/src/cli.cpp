#include "hexhybrid/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hexhybrid/errors.hpp"
#include "hexhybrid/evaluation.hpp"
#include "hexhybrid/replay.hpp"
#include "hexhybrid/scenario.hpp"
#include "hexhybrid/stats.hpp"
#include "hexhybrid/training.hpp"

namespace hexhybrid {

namespace fs = std::filesystem;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) { g_stop = true; }

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << content;
    if (!f) throw ConfigError("cannot write " + path.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw LoadError("cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<long long> parse_seed_list(const std::string& text) {
  std::vector<long long> seeds;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const long long lo = std::stoll(text.substr(0, dots));
      const long long hi = std::stoll(text.substr(dots + 2));
      if (hi < lo) throw ConfigError("empty seed range " + text);
      for (long long s = lo; s <= hi; ++s) seeds.push_back(s);
      return seeds;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) seeds.push_back(std::stoll(item));
  } catch (const std::logic_error&) {
    throw ConfigError("bad seed list '" + text + "'");
  }
  if (seeds.empty()) throw ConfigError("bad seed list '" + text + "'");
  return seeds;
}

std::string substitute_seed(std::string path, long long seed) {
  const std::string key = "{seed}";
  for (auto pos = path.find(key); pos != std::string::npos; pos = path.find(key)) {
    path.replace(pos, key.size(), std::to_string(seed));
  }
  return path;
}

struct ScenarioFlags {
  int rows = 10;
  int cols = 10;
  int units = 0;   // 0: draw from {6, 9}
  int cities = 0;  // 0: draw from {1, 2}
  int max_phases = 40;

  void add_to(CLI::App* app) {
    app->add_option("--rows", rows, "Board rows")->capture_default_str();
    app->add_option("--cols", cols, "Board columns")->capture_default_str();
    app->add_option("--units", units, "Units per faction (default: drawn from 6 or 9)");
    app->add_option("--cities", cities, "Number of cities (default: drawn from 1 or 2)");
    app->add_option("--max-phases", max_phases, "Phase cap")->capture_default_str();
  }

  ScenarioConfig config() const {
    ScenarioConfig c;
    c.dims = {rows, cols};
    if (units) c.units_per_faction_choices = {units};
    if (cities) c.city_count_choices = {cities};
    c.max_phases = max_phases;
    validate(c);
    return c;
  }

  Json to_json() const {
    return {{"rows", rows}, {"cols", cols}, {"units", units}, {"cities", cities}, {"max_phases", max_phases}};
  }
};

struct HyperFlags {
  Hyperparams h{};

  void add_to(CLI::App* app) {
    app->add_option("--learning-rate", h.learning_rate)->capture_default_str();
    app->add_option("--buffer-size", h.buffer_size)->capture_default_str();
    app->add_option("--learning-starts", h.learning_starts)->capture_default_str();
    app->add_option("--batch-size", h.batch_size)->capture_default_str();
    app->add_option("--gamma", h.gamma)->capture_default_str();
    app->add_option("--target-update", h.target_update_interval)->capture_default_str();
    app->add_option("--eps-initial", h.eps_initial)->capture_default_str();
    app->add_option("--eps-final", h.eps_final)->capture_default_str();
    app->add_option("--exploration-fraction", h.exploration_fraction)->capture_default_str();
    app->add_option("--train-freq", h.train_freq)->capture_default_str();
    app->add_option("--gradient-steps", h.gradient_steps)->capture_default_str();
    app->add_option("--steps", h.total_budget, "Training budget in agent steps")->capture_default_str();
  }
};

Json hyper_json(const Hyperparams& h) {
  return {{"learning_rate", h.learning_rate},
          {"buffer_size", h.buffer_size},
          {"learning_starts", h.learning_starts},
          {"batch_size", h.batch_size},
          {"gamma", h.gamma},
          {"target_update_interval", h.target_update_interval},
          {"eps_initial", h.eps_initial},
          {"eps_final", h.eps_final},
          {"exploration_fraction", h.exploration_fraction},
          {"train_freq", h.train_freq},
          {"gradient_steps", h.gradient_steps},
          {"total_budget", h.total_budget},
          {"huber_delta", h.huber_delta},
          {"adam_beta1", h.adam_beta1},
          {"adam_beta2", h.adam_beta2},
          {"adam_epsilon", h.adam_epsilon}};
}

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  Json config = Json::object();
  std::vector<long long> seeds;
  std::vector<std::string> artifacts;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const fs::path& path, bool complete) const {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json j{{"tool", "hexhybrid"},
           {"version", kToolVersion},
           {"command", command},
           {"argv", argv},
           {"config", config},
           {"seeds", seeds},
           {"artifacts", artifacts},
           {"duration_seconds", secs},
           {"complete", complete}};
    write_atomic(path, j.dump(2) + "\n");
  }
};

std::shared_ptr<const QNetwork<float>> load_shared(const std::string& path, const Architecture& arch) {
  return std::make_shared<const QNetwork<float>>(load_model(path, arch));
}

AgentSpec agent_for(const std::string& name, const std::string& hybrid_model, const std::string& individual_model,
                    long long seed, BoardDims dims) {
  AgentSpec spec;
  spec.kind = parse_agent_kind(name);
  if (spec.kind == AgentKind::Hybrid) {
    if (hybrid_model.empty()) throw LoadError("hybrid agent requires --hybrid-model");
    spec.model = load_shared(substitute_seed(hybrid_model, seed), Architecture::manager());
  } else if (spec.kind == AgentKind::Individual) {
    if (individual_model.empty()) throw LoadError("individual agent requires --individual-model");
    spec.model = load_shared(substitute_seed(individual_model, seed), Architecture::individual(dims));
  }
  return spec;
}

std::pair<std::string, std::string> split_matchup(const std::string& m) {
  const auto colon = m.find(':');
  if (colon == std::string::npos) throw ConfigError("matchup must look like blue:red, got '" + m + "'");
  return {m.substr(0, colon), m.substr(colon + 1)};
}

std::string fixed(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ':' || c == ' ') c = '_';
  }
  return s;
}

}  // namespace

std::string board_sketch(const GameState& state) {
  std::ostringstream out;
  int blue = 0, red = 0;
  for (const Unit& u : state.units) (u.faction == Faction::Blue ? blue : red)++;
  out << "board " << state.dims.n_rows << "x" << state.dims.n_cols << ", blue " << blue << " units, red " << red
      << " units, " << state.cities.size() << (state.cities.size() == 1 ? " city" : " cities") << ", seed "
      << state.seed << "\n";
  out << "legend: . clear  ~ water  ^ rough  , marsh  C city  B blue unit  R red unit\n";
  for (int r = 0; r < state.dims.n_rows; ++r) {
    out << (r < 10 ? " " : "") << r << " " << (r % 2 ? " " : "");
    for (int c = 0; c < state.dims.n_cols; ++c) {
      const HexCoord h{r, c};
      char ch = '.';
      switch (state.terrain_at(h)) {
        case Terrain::Clear: ch = '.'; break;
        case Terrain::Water: ch = '~'; break;
        case Terrain::Rough: ch = '^'; break;
        case Terrain::Urban: ch = 'C'; break;
        case Terrain::Marsh: ch = ','; break;
      }
      if (const Unit* u = state.unit_at(h)) ch = u->faction == Faction::Blue ? 'B' : 'R';
      out << ch << (c + 1 < state.dims.n_cols ? " " : "");
    }
    out << "\n";
  }
  for (Faction f : {Faction::Blue, Faction::Red}) {
    const auto managers = assign_managers(state, f);
    out << "managers " << to_string(f) << ": " << managers.size();
    for (const auto& m : managers) {
      out << " [";
      for (std::size_t i = 0; i < m.unit_ids.size(); ++i) out << (i ? " " : "") << m.unit_ids[i];
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hex wargame simulator with hybrid manager agents"};
  app.set_config("--config", "", "TOML config file; flags override its values");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Manifest manifest;
  manifest.argv = args;

  // scenario
  auto* scen = app.add_subcommand("scenario", "Generate a scenario and a board sketch");
  long long scen_seed = 0;
  std::string scen_out = "scenario.json", scen_sketch;
  ScenarioFlags scen_flags;
  scen->add_option("--seed", scen_seed, "Scenario seed")->required();
  scen->add_option("--out", scen_out, "Scenario JSON path")->capture_default_str();
  scen->add_option("--sketch", scen_sketch, "Board sketch path (default: <out>.txt)");
  scen_flags.add_to(scen);

  // train
  auto* train = app.add_subcommand("train", "Train a manager or individual agent against the scripted agent");
  std::string train_agent = "manager", train_out;
  long long train_seed = 1;
  int train_cycle = 10, train_workers = 1;
  long long eval_interval = 0, eval_games = 100;
  ScenarioFlags train_flags;
  HyperFlags hyper;
  train->add_option("--agent", train_agent, "manager or individual")
      ->check(CLI::IsMember({"manager", "individual"}))
      ->capture_default_str();
  train->add_option("--seed", train_seed, "Run seed")->capture_default_str();
  train->add_option("--cycle", train_cycle, "Scenario cycle length")->capture_default_str();
  train->add_option("--out", train_out, "Output directory")->required();
  train->add_option("--eval-interval", eval_interval, "Agent steps between evaluations (default 10000 / 100000)");
  train->add_option("--eval-games", eval_games, "Games per evaluation")->capture_default_str();
  train->add_option("--workers", train_workers, "Threads for evaluation games")->capture_default_str();
  train_flags.add_to(train);
  hyper.add_to(train);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate matchups and compute statistics");
  std::vector<std::string> matchups;
  long long eval_seed = 1, eval_n = 1000;
  std::string seeds_text, eval_out = "eval", hybrid_model, individual_model;
  bool eval_all = false;
  int eval_cycle = 10, eval_workers = 1;
  double alpha = 0.05;
  ScenarioFlags eval_flags;
  eval->add_option("--matchup", matchups, "blue:red, agents scripted|hybrid|individual|random");
  eval->add_option("--games", eval_n, "Games per matchup and seed")->capture_default_str();
  eval->add_option("--seed", eval_seed, "Scenario seed")->capture_default_str();
  eval->add_option("--seeds", seeds_text, "Seed list, e.g. 1..5 or 1,3,4 (overrides --seed)");
  eval->add_flag("--all", eval_all, "Hybrid, RL individual and scripted Blue against scripted Red");
  eval->add_option("--hybrid-model", hybrid_model, "Manager model; {seed} is replaced by the seed");
  eval->add_option("--individual-model", individual_model, "Individual model; {seed} is replaced by the seed");
  eval->add_option("--cycle", eval_cycle, "Scenario cycle length")->capture_default_str();
  eval->add_option("--workers", eval_workers, "Worker threads")->capture_default_str();
  eval->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  eval->add_option("--out", eval_out, "Output directory")->capture_default_str();
  eval_flags.add_to(eval);

  // replay
  auto* replay = app.add_subcommand("replay", "Export a game replay or verify one");
  std::string replay_matchup = "scripted:scripted", replay_out = "replay.jsonl", replay_verify;
  long long replay_seed = 1, replay_game = 0;
  int replay_cycle = 10;
  std::string replay_hybrid, replay_individual;
  ScenarioFlags replay_flags;
  replay->add_option("--matchup", replay_matchup, "blue:red")->capture_default_str();
  replay->add_option("--seed", replay_seed, "Scenario seed")->capture_default_str();
  replay->add_option("--game", replay_game, "Evaluation game index")->capture_default_str();
  replay->add_option("--cycle", replay_cycle, "Scenario cycle length")->capture_default_str();
  replay->add_option("--hybrid-model", replay_hybrid, "Manager model");
  replay->add_option("--individual-model", replay_individual, "Individual model");
  replay->add_option("--out", replay_out, "Replay path")->capture_default_str();
  replay->add_option("--verify", replay_verify, "Re-simulate a replay file and check it");
  replay_flags.add_to(replay);

  // stats
  auto* stats = app.add_subcommand("stats", "Summarize per-game score CSVs");
  std::string stats_games, stats_against;
  double stats_alpha = 0.05;
  stats->add_option("--games", stats_games, "Per-game CSV")->required();
  stats->add_option("--against", stats_against, "Second per-game CSV for a paired t-test");
  stats->add_option("--alpha", stats_alpha, "Significance level")->capture_default_str();

  // rerun
  auto* rerun = app.add_subcommand("rerun", "Re-execute a run from its manifest");
  std::string rerun_manifest;
  rerun->add_option("manifest", rerun_manifest, "manifest.json")->required();

  std::vector<const char*> argv{"hexhybrid"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*scen) {
      manifest.command = "scenario";
      const ScenarioConfig cfg = scen_flags.config();
      const GameState s = generate(cfg, static_cast<std::uint64_t>(scen_seed));
      const std::string sketch_path = scen_sketch.empty() ? fs::path(scen_out).replace_extension(".txt").string()
                                                          : scen_sketch;
      write_atomic(scen_out, state_to_json(s).dump(2) + "\n");
      const std::string sketch = board_sketch(s);
      write_atomic(sketch_path, sketch);
      out << sketch;
      manifest.config = scen_flags.to_json();
      manifest.seeds = {scen_seed};
      manifest.artifacts = {scen_out, sketch_path};
      manifest.write(fs::path(scen_out).replace_extension(".manifest.json"), true);
      return kExitOk;
    }

    if (*train) {
      manifest.command = "train";
      const bool is_manager = train_agent == "manager";
      TrainConfig cfg = is_manager ? default_manager_config() : default_individual_config();
      cfg.scenario = train_flags.config();
      cfg.seed = static_cast<std::uint64_t>(train_seed);
      cfg.cycle = train_cycle;
      cfg.h = hyper.h;
      if (eval_interval > 0) cfg.eval_interval = eval_interval;
      cfg.eval_games = eval_games;
      cfg.eval_workers = train_workers;
      cfg.validate();

      const fs::path dir = train_out;
      fs::create_directories(dir);
      const fs::path model_path = dir / "model.hxqn";
      const fs::path trace_path = dir / "trace.csv";
      const fs::path hyper_path = dir / "hyperparams.txt";
      manifest.config = {{"agent", train_agent},
                         {"cycle", train_cycle},
                         {"eval_interval", cfg.eval_interval},
                         {"eval_games", cfg.eval_games},
                         {"workers", train_workers},
                         {"scenario", train_flags.to_json()},
                         {"hyperparams", hyper_json(cfg.h)}};
      manifest.seeds = {train_seed};
      manifest.artifacts = {model_path.string(), trace_path.string(), hyper_path.string()};

      std::string hyper_text;
      const Json hj = hyper_json(cfg.h);
      for (const auto& [k, v] : hj.items()) hyper_text += k + " = " + v.dump() + "\n";
      write_atomic(hyper_path, hyper_text);

      cfg.on_checkpoint = [&](const QNetwork<float>& net, std::span<const TraceRow> trace) {
        save_model(net, model_path);
        std::string csv = "step,mean_reward,mean_score\n";
        for (const auto& r : trace) csv += std::to_string(r.step) + "," + fixed(r.mean_reward) + "," + fixed(r.mean_score) + "\n";
        write_atomic(trace_path, csv);
        out << "step " << trace.back().step << "  mean reward " << fixed(trace.back().mean_reward, 3)
            << "  mean score " << fixed(trace.back().mean_score, 3) << std::endl;
      };
      g_stop = false;
      cfg.stop = &g_stop;
      auto previous = std::signal(SIGINT, on_sigint);
      TrainResult result = is_manager ? train_manager(cfg) : train_individual(cfg);
      std::signal(SIGINT, previous);
      if (result.complete) save_model(result.model, model_path);
      manifest.write(dir / "manifest.json", result.complete);
      out << (result.complete ? "finished" : "interrupted") << ": " << result.steps << " steps, " << result.updates
          << " updates, " << result.games << " games\n";
      return result.complete ? kExitOk : kExitFailure;
    }

    if (*eval) {
      manifest.command = "eval";
      const ScenarioConfig scfg = eval_flags.config();
      const std::vector<long long> seeds = seeds_text.empty() ? std::vector<long long>{eval_seed}
                                                              : parse_seed_list(seeds_text);
      std::vector<std::pair<std::string, std::string>> columns;  // (column label, matchup)
      if (eval_all) {
        columns = {{"Scripted", "scripted:scripted"}, {"RL Individual", "individual:scripted"},
                   {"Hybrid", "hybrid:scripted"}};
      }
      for (const auto& m : matchups) columns.emplace_back(m, m);
      if (columns.empty()) throw ConfigError("give --matchup or --all");

      const fs::path dir = eval_out;
      fs::create_directories(dir);
      std::vector<std::string> labels;
      for (const auto& c : columns) labels.push_back(c.first);
      ResultsTable table(labels, seeds);
      std::string summary = "matchup,seed,mean,sem,n\n";
      std::string ttests = "pair,seed,t,p,significant\n";
      int ttest_count = 0;

      for (long long seed : seeds) {
        std::vector<std::vector<double>> scores;
        for (const auto& [label, m] : columns) {
          const auto [b, r] = split_matchup(m);
          MatchupConfig cfg;
          cfg.blue = agent_for(b, hybrid_model, individual_model, seed, scfg.dims);
          cfg.red = agent_for(r, hybrid_model, individual_model, seed, scfg.dims);
          cfg.scenario = scfg;
          cfg.seed = static_cast<std::uint64_t>(seed);
          cfg.cycle = eval_cycle;
          cfg.n_games = eval_n;
          cfg.workers = eval_workers;
          const auto games = evaluate_games(cfg);
          const ScoreStats st = summarize(games);
          table.set(seed, label, st);
          const fs::path games_path = dir / ("games_" + sanitize(label) + "_seed" + std::to_string(seed) + ".csv");
          write_atomic(games_path, per_game_csv(games));
          manifest.artifacts.push_back(games_path.string());
          summary += m + "," + std::to_string(seed) + "," + fixed(st.mean) + "," + fixed(st.sem) + "," +
                     std::to_string(st.n) + "\n";
          scores.push_back(blue_scores(games));
        }
        // Hybrid vs Scripted, Hybrid vs RL Individual, RL Individual vs Scripted
        // for --all; every pair of columns otherwise.
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < columns.size(); ++i)
          for (std::size_t k = columns.size(); k-- > i + 1;) pairs.emplace_back(k, i);
        for (const auto& [a, b] : pairs) {
          const std::string name = columns[a].first + " vs " + columns[b].first;
          ++ttest_count;
          try {
            const auto t = paired_t_test(scores[a], scores[b], alpha);
            ttests += name + "," + std::to_string(seed) + "," + fixed(t.t) + "," + fixed(t.p, 10) + "," +
                      (t.significant ? "yes" : "no") + "\n";
          } catch (const DegenerateInputError&) {
            ttests += name + "," + std::to_string(seed) + ",,,degenerate\n";
          }
        }
      }
      write_atomic(dir / "summary.csv", summary);
      write_atomic(dir / "table.csv", table.to_csv());
      write_atomic(dir / "table.txt", table.to_text());
      write_atomic(dir / "boxplot.csv", table.boxplot_csv());
      write_atomic(dir / "ttests.csv", ttests);
      for (const char* f : {"summary.csv", "table.csv", "table.txt", "boxplot.csv", "ttests.csv"}) {
        manifest.artifacts.push_back((dir / f).string());
      }
      out << table.to_text();
      out << ttest_count << " paired t-tests written to " << (dir / "ttests.csv").string() << "\n";
      manifest.config = {{"matchups", matchups},     {"all", eval_all},           {"games", eval_n},
                         {"cycle", eval_cycle},      {"workers", eval_workers},   {"alpha", alpha},
                         {"hybrid_model", hybrid_model}, {"individual_model", individual_model},
                         {"scenario", eval_flags.to_json()}};
      manifest.seeds = seeds;
      manifest.write(dir / "manifest.json", true);
      return kExitOk;
    }

    if (*replay) {
      if (!replay_verify.empty()) {
        const auto records = parse_jsonl(read_file(replay_verify));
        const VerifyReport rep = verify_replay(records);
        if (!rep.ok) {
          err << "verification failed at " << rep.message << "\n";
          return kExitVerification;
        }
        out << "verified " << rep.records << " records, final score " << rep.final_score.total() << "\n";
        return kExitOk;
      }
      manifest.command = "replay";
      const ScenarioConfig scfg = replay_flags.config();
      const auto [b, r] = split_matchup(replay_matchup);
      MatchupConfig cfg;
      cfg.blue = agent_for(b, replay_hybrid, replay_individual, replay_seed, scfg.dims);
      cfg.red = agent_for(r, replay_hybrid, replay_individual, replay_seed, scfg.dims);
      cfg.scenario = scfg;
      cfg.seed = static_cast<std::uint64_t>(replay_seed);
      cfg.cycle = replay_cycle;
      const MatchRunner runner(cfg);
      ReplayWriter writer;
      const GameOutcome g = runner.play(replay_game, &writer);
      write_atomic(replay_out, writer.to_jsonl());
      out << "game " << replay_game << " (scenario " << g.scenario_index << "): blue score " << g.blue_score << ", "
          << writer.records().size() << " records\n";
      manifest.config = {{"matchup", replay_matchup}, {"game", replay_game}, {"cycle", replay_cycle},
                         {"scenario", replay_flags.to_json()}};
      manifest.seeds = {replay_seed};
      manifest.artifacts = {replay_out};
      manifest.write(fs::path(replay_out).replace_extension(".manifest.json"), true);
      return kExitOk;
    }

    if (*stats) {
      auto load_scores = [](const std::string& path) {
        std::istringstream in(read_file(path));
        std::string line;
        std::getline(in, line);
        std::vector<double> xs;
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          const auto comma = line.rfind(',');
          try {
            xs.push_back(std::stod(line.substr(comma + 1)));
          } catch (const std::logic_error&) {
            throw LoadError("bad row in " + path + ": " + line);
          }
        }
        return xs;
      };
      const auto xs = load_scores(stats_games);
      const ScoreStats s = score_stats(xs);
      out << "n " << s.n << "\nmean " << fixed(s.mean) << "\nsem " << (s.sem_defined() ? fixed(s.sem) : "undefined")
          << "\nmin " << fixed(s.quartiles.min) << "\nq1 " << fixed(s.quartiles.q1) << "\nmedian "
          << fixed(s.quartiles.median) << "\nq3 " << fixed(s.quartiles.q3) << "\nmax " << fixed(s.quartiles.max)
          << "\n";
      if (!stats_against.empty()) {
        const auto ys = load_scores(stats_against);
        const auto t = paired_t_test(xs, ys, stats_alpha);
        out << "t " << fixed(t.t) << "\np " << fixed(t.p, 10) << "\nsignificant " << (t.significant ? "yes" : "no")
            << "\n";
      }
      return kExitOk;
    }

    if (*rerun) {
      const Json m = Json::parse(read_file(rerun_manifest));
      const auto argv_saved = m.at("argv").get<std::vector<std::string>>();
      return run_cli(argv_saved, out, err);
    }
  } catch (const DegenerateInputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const GenerationError& e) {
    err << "generation error: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const VerificationError& e) {
    err << "verification error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Json::exception& e) {
    err << "load error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hexhybrid
