#include "hexhybrid/replay.hpp"

#include <sstream>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {

namespace {

Json hex_json(HexCoord h) { return Json::array({h.row, h.col}); }
HexCoord hex_from(const Json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

Faction faction_from(const std::string& s) {
  if (s == "blue") return Faction::Blue;
  if (s == "red") return Faction::Red;
  throw LoadError("bad faction '" + s + "'");
}
std::string faction_name(Faction f) { return f == Faction::Blue ? "blue" : "red"; }

template <class E>
E enum_from(int v, int count, const char* what) {
  if (v < 0 || v >= count) throw LoadError(std::string("bad ") + what);
  return static_cast<E>(v);
}

}  // namespace

Json score_to_json(const ScoreBreakdown& s) {
  return {{"blue_city", s.blue_city}, {"blue_combat", s.blue_combat}, {"red_city", s.red_city},
          {"red_combat", s.red_combat}, {"total", s.total()}};
}

ScoreBreakdown score_from_json(const Json& j) {
  return {j.at("blue_city").get<int>(), j.at("blue_combat").get<int>(), j.at("red_city").get<int>(),
          j.at("red_combat").get<int>()};
}

Json action_to_json(const ActionCmd& a) {
  switch (a.kind) {
    case ActionKind::Hold: return {{"kind", "hold"}};
    case ActionKind::Move: return {{"kind", "move"}, {"to", hex_json(a.to)}};
    case ActionKind::Attack: return {{"kind", "attack"}, {"target", a.target_id}};
  }
  return {};
}

ActionCmd action_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "hold") return ActionCmd::hold();
  if (kind == "move") return ActionCmd::move(hex_from(j.at("to")));
  if (kind == "attack") return ActionCmd::attack(j.at("target").get<int>());
  throw LoadError("bad action kind '" + kind + "'");
}

Json state_to_json(const GameState& s) {
  Json j;
  j["rows"] = s.dims.n_rows;
  j["cols"] = s.dims.n_cols;
  Json terrain = Json::array();
  for (Terrain t : s.terrain) terrain.push_back(static_cast<int>(t));
  j["terrain"] = terrain;
  Json units = Json::array();
  for (const Unit& u : s.units) {
    units.push_back({{"id", u.id},
                     {"faction", faction_name(u.faction)},
                     {"type", static_cast<int>(u.type)},
                     {"strength", u.strength},
                     {"pos", hex_json(u.pos)},
                     {"alive", u.alive},
                     {"acted", u.acted}});
  }
  j["units"] = units;
  Json cities = Json::array();
  for (const City& c : s.cities) {
    cities.push_back({{"hex", hex_json(c.hex)}, {"owner", c.owner ? Json(faction_name(*c.owner)) : Json(nullptr)}});
  }
  j["cities"] = cities;
  j["phase"] = s.phase;
  j["max_phases"] = s.max_phases;
  j["on_move"] = faction_name(s.on_move);
  j["score"] = score_to_json(s.score);
  j["seed"] = s.seed;
  j["end_on_elimination"] = s.end_on_elimination;
  return j;
}

GameState state_from_json(const Json& j) {
  try {
    GameState s;
    s.dims = {j.at("rows").get<int>(), j.at("cols").get<int>()};
    for (const auto& t : j.at("terrain")) s.terrain.push_back(enum_from<Terrain>(t.get<int>(), kTerrainCount, "terrain"));
    if (static_cast<int>(s.terrain.size()) != s.dims.cell_count()) throw LoadError("terrain size mismatch");
    for (const auto& u : j.at("units")) {
      Unit unit;
      unit.id = u.at("id").get<int>();
      unit.faction = faction_from(u.at("faction").get<std::string>());
      unit.type = enum_from<UnitType>(u.at("type").get<int>(), kUnitTypeCount, "unit type");
      unit.strength = u.at("strength").get<int>();
      unit.pos = hex_from(u.at("pos"));
      unit.alive = u.at("alive").get<bool>();
      unit.acted = u.at("acted").get<bool>();
      if (unit.id != static_cast<int>(s.units.size())) throw LoadError("unit ids must be 0..n-1 in order");
      require_in_bounds(unit.pos, s.dims);
      s.units.push_back(unit);
    }
    for (const auto& c : j.at("cities")) {
      City city;
      city.hex = hex_from(c.at("hex"));
      if (!c.at("owner").is_null()) city.owner = faction_from(c.at("owner").get<std::string>());
      s.cities.push_back(city);
    }
    s.phase = j.at("phase").get<int>();
    s.max_phases = j.at("max_phases").get<int>();
    s.on_move = faction_from(j.at("on_move").get<std::string>());
    s.score = score_from_json(j.at("score"));
    s.seed = j.at("seed").get<std::uint64_t>();
    s.end_on_elimination = j.at("end_on_elimination").get<bool>();
    return s;
  } catch (const Json::exception& e) {
    throw LoadError(std::string("malformed state: ") + e.what());
  } catch (const CoordinateError& e) {
    throw LoadError(std::string("malformed state: ") + e.what());
  }
}

void ReplayWriter::on_start(const GameState& initial) {
  records_.clear();
  records_.push_back({{"type", "header"}, {"state", state_to_json(initial)}});
}

void ReplayWriter::on_action(const GameState& after, int unit_id, const ActionCmd& action) {
  records_.push_back({{"type", "action"},
                      {"phase", after.phase},
                      {"unit", unit_id},
                      {"action", action_to_json(action)},
                      {"score", score_to_json(after.score)}});
}

void ReplayWriter::on_end_phase(const GameState& after) {
  records_.push_back({{"type", "end_phase"}, {"phase", after.phase}, {"score", score_to_json(after.score)}});
}

void ReplayWriter::on_manager_decision(const GameState& state, const ManagerState& mgr, int action_index,
                                       std::optional<double> reward) {
  Json units = Json::array();
  for (int id : mgr.unit_ids) units.push_back(id);
  records_.push_back({{"type", "manager"},
                      {"phase", state.phase},
                      {"faction", faction_name(mgr.faction)},
                      {"manager_id", mgr.manager_id},
                      {"units", units},
                      {"action_index", action_index},
                      {"reward", reward ? Json(*reward) : Json(nullptr)}});
}

void ReplayWriter::on_finish(const GameState& final_state) {
  records_.push_back({{"type", "trailer"}, {"phase", final_state.phase}, {"score", score_to_json(final_state.score)}});
}

std::string ReplayWriter::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::vector<Json> parse_jsonl(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw LoadError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

VerifyReport verify_replay(const std::vector<Json>& records) {
  VerifyReport rep;
  rep.records = records.size();
  auto fail = [&](std::size_t i, std::string msg) {
    rep.ok = false;
    rep.first_divergent = i;
    rep.message = "record " + std::to_string(i) + ": " + msg;
    return rep;
  };
  if (records.empty() || records[0].value("type", "") != "header") return fail(0, "missing header");
  GameState state;
  try {
    state = state_from_json(records[0].at("state"));
  } catch (const Error& e) {
    return fail(0, e.what());
  }
  bool finished = false;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const Json& r = records[i];
    const std::string type = r.value("type", "");
    if (finished) return fail(i, "record after trailer");
    try {
      if (type == "action") {
        if (r.at("phase").get<int>() != state.phase) return fail(i, "phase mismatch");
        const int unit = r.at("unit").get<int>();
        const ActionCmd a = action_from_json(r.at("action"));
        if (is_terminal(state)) return fail(i, "action after the game ended");
        if (unit < 0 || unit >= static_cast<int>(state.units.size()) || !is_legal(state, unit, a)) {
          return fail(i, "illegal action " + describe(a) + " for unit " + std::to_string(unit));
        }
        apply_action_in_place(state, unit, a);
        if (score_from_json(r.at("score")) != state.score) return fail(i, "score diverges after action");
      } else if (type == "end_phase") {
        if (!phase_complete(state)) return fail(i, "phase ended with units still to act");
        end_phase_in_place(state);
        if (r.at("phase").get<int>() != state.phase) return fail(i, "phase mismatch");
        if (score_from_json(r.at("score")) != state.score) return fail(i, "score diverges at phase end");
      } else if (type == "manager") {
        const int a = r.at("action_index").get<int>();
        if (a < 0 || a >= kActionCount) return fail(i, "manager action out of range");
      } else if (type == "trailer") {
        if (!is_terminal(state)) return fail(i, "trailer before the game ended");
        if (score_from_json(r.at("score")) != state.score) return fail(i, "final score diverges");
        finished = true;
      } else {
        return fail(i, "unknown record type '" + type + "'");
      }
    } catch (const Json::exception& e) {
      return fail(i, std::string("malformed record: ") + e.what());
    } catch (const Error& e) {
      return fail(i, e.what());
    }
  }
  if (!finished) return fail(records.size(), "missing trailer");
  rep.ok = true;
  rep.final_score = state.score;
  rep.message = "ok";
  return rep;
}

}  // namespace hexhybrid
