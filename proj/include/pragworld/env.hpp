// Interactive text episode: parsing, stepping, scoring and success checks.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pragworld/episode.hpp"
#include "pragworld/render.hpp"

namespace pragworld {

inline constexpr int kMaxSteps = 40;
inline constexpr double kSuccessReward = 100.0;

struct ParsedCommand {
  enum class Kind { action, cant_understand, cant_do };
  Kind kind = Kind::cant_understand;
  GroundedAction action;
};

// Grammar of the robot commands, grounded at s (the robot's location fills "at" slots).
// Object references must be ids. The result is checked against preconditions.
ParsedCommand parse_command(const WorldState& s, std::string_view text);

// Some grounding of A(m) holds at s.
bool check_success(const WorldState& s, const std::vector<GroundedSubgoal>& members);
// A(m) is taken at the quest state, so position specifiers keep their quest-time referents.
bool check_success(const WorldState& s, const LiftedSubgoal& m, const WorldState& s_T);

struct StepResult {
  std::string observation;
  double score_delta = 0.0;
  bool done = false;
  std::string info;  // success, step_limit, invalid, action
};

class Session {
 public:
  Session(EpisodeSpec episode, Observability mode);
  static Session open(const std::string& path, Observability mode);

  // Back to s_T; returns the initial observation.
  std::string reset();
  StepResult step(std::string_view command);

  double score() const { return score_; }
  bool done() const { return done_; }
  bool success() const { return success_; }
  int steps_taken() const { return steps_; }
  Observability mode() const { return mode_; }
  const WorldState& state() const { return state_; }
  const EpisodeSpec& episode() const { return episode_; }
  const WorldState& quest_state() const { return s_T_; }
  const std::vector<GroundedSubgoal>& success_set() const { return members_; }
  // Text of every applicable robot action at the current state.
  std::vector<std::string> valid_commands() const;
  // Welcome and examine parts of the initial observation, used for token statistics.
  std::string scene_observation() const;

 private:
  EpisodeSpec episode_;
  Observability mode_;
  WorldState s_T_, state_;
  std::vector<GroundedSubgoal> members_;
  std::string trajectory_text_, utterance_text_;
  int steps_ = 0;
  double score_ = 0.0;
  bool done_ = false, success_ = false;
};

}  // namespace pragworld
