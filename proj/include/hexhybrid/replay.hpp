#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexhybrid/agents.hpp"
#include "hexhybrid/engine.hpp"

namespace hexhybrid {

using Json = nlohmann::json;

Json state_to_json(const GameState& state);
GameState state_from_json(const Json& j);

Json action_to_json(const ActionCmd& a);
ActionCmd action_from_json(const Json& j);

Json score_to_json(const ScoreBreakdown& s);
ScoreBreakdown score_from_json(const Json& j);

// One JSON object per line: a "header" with the initial state, then
// "action", "end_phase" and "manager" records, then a "trailer" with the
// final score breakdown.
class ReplayWriter : public GameRecorder {
 public:
  void on_start(const GameState& initial) override;
  void on_action(const GameState& after, int unit_id, const ActionCmd& action) override;
  void on_end_phase(const GameState& after) override;
  void on_manager_decision(const GameState& state, const ManagerState& mgr, int action_index,
                           std::optional<double> reward) override;
  void on_finish(const GameState& final_state) override;

  const std::vector<Json>& records() const { return records_; }
  std::string to_jsonl() const;

 private:
  std::vector<Json> records_;
};

std::vector<Json> parse_jsonl(const std::string& text);

struct VerifyReport {
  bool ok = false;
  std::size_t records = 0;
  std::size_t first_divergent = 0;  // 0-based record index when !ok
  std::string message;
  ScoreBreakdown final_score{};
};

// Re-simulates the action stream from the header and checks every recorded
// score, the phase sequence, and the trailer.
VerifyReport verify_replay(const std::vector<Json>& records);

}  // namespace hexhybrid
