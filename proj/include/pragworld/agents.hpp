// Baseline agents and the evaluation harness.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pragworld/env.hpp"

namespace pragworld {

enum class AgentKind { random, heuristic };
std::string_view agent_kind_name(AgentKind k);
AgentKind parse_agent_kind(std::string_view s);

// Uniform choice over the applicable robot actions, examine and inventory left out.
class RandomAgent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
  std::string act(const Session& session);

 private:
  Rng rng_;
};

struct HeuristicOptions {
  int candidates = 6;  // groundings planned when ranking by cost
  PlannerConfig planner;
};

// One-trial heuristic: ground the utterance at the quest state and prefer candidates that
// repeat something the human did to the same category (same destination or verb), then
// candidates of a handled category. The cheapest of the first nonempty tier is planned.
// Empty when nothing can be attempted.
std::vector<std::string> heuristic_solve(const EpisodeSpec& e, const HeuristicOptions& o = {});

struct EpisodeOutcome {
  int level = 0;
  double score = 0.0;
  bool success = false;
  int moves = 0;
};

EpisodeOutcome run_episode(const EpisodeSpec& e, AgentKind kind, Observability mode, std::uint64_t seed,
                           const HeuristicOptions& ho = {});

struct LevelStats {
  int episodes = 0;
  double avg_score = 0.0;
  double success_rate = 0.0;  // percent
  std::optional<double> avg_moves;  // over successful episodes
};

struct EvalReport {
  AgentKind agent = AgentKind::random;
  Observability mode = Observability::full;
  std::map<int, LevelStats> levels;
  LevelStats overall;

  Json to_json() const;
  std::string table() const;
};

LevelStats summarize(const std::vector<EpisodeOutcome>& outcomes);
EvalReport make_report(AgentKind kind, Observability mode, const std::vector<EpisodeOutcome>& outcomes);

// Episode i runs with seed Rng(seed).split("eval", i).
std::vector<EpisodeOutcome> run_all_serial(AgentKind kind, const std::vector<EpisodeSpec>& episodes, Observability mode,
                                           std::uint64_t seed, const HeuristicOptions& ho = {});
std::vector<EpisodeOutcome> run_all_parallel(AgentKind kind, const std::vector<EpisodeSpec>& episodes,
                                             Observability mode, std::uint64_t seed, int threads = 0,
                                             const HeuristicOptions& ho = {});
EvalReport evaluate(AgentKind kind, const std::vector<EpisodeSpec>& episodes, Observability mode, std::uint64_t seed,
                    int threads = 0);

}  // namespace pragworld
