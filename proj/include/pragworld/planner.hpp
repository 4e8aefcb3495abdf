// Greedy best-first forward search with a delete-relaxation heuristic.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pragworld/actions.hpp"
#include "pragworld/goal_compile.hpp"
#include "pragworld/rng.hpp"

namespace pragworld {

struct Plan {
  std::vector<GroundedAction> actions;
  double total_cost = 0.0;
  std::size_t size() const { return actions.size(); }
};

enum class HeuristicKind { ff_relaxed, conjunct_count };

struct PlannerConfig {
  std::int64_t node_budget = 20000;  // expansions
  HeuristicKind heuristic = HeuristicKind::ff_relaxed;
};

void validate(const PlannerConfig& config);

class NoPlanError : public std::runtime_error {
 public:
  enum class Reason { budget_exhausted, relaxed_unreachable };
  NoPlanError(Reason r, const std::string& what) : std::runtime_error(what), reason(r) {}
  Reason reason;
};

// Relaxed-plan size estimate of the goal from s for the given agent; a negative value
// means the goal is unreachable even in the relaxation. Zero exactly on goal states.
int relaxed_heuristic(const WorldState& s, Agent agent, const CompiledGoal& goal);

// Objects the search may touch: everything mentioned by the goal, the tools it needs,
// the holders of those objects, and whatever either agent holds.
std::vector<ObjectIndex> relevant_objects(const WorldState& s, Agent agent, const CompiledGoal& goal);

Plan plan(const WorldState& s, Agent agent, const CompiledGoal& goal, const PlannerConfig& config = {});
Plan plan(const WorldState& s, Agent agent, const Formula& goal, const PlannerConfig& config = {});
double cost_to_go(const WorldState& s, Agent agent, const CompiledGoal& goal, const PlannerConfig& config = {});

// Replays the plan through world-core; throws PreconditionError or std::logic_error when the
// plan is inapplicable or misses the goal. Returns the final state.
WorldState validate_plan(const WorldState& s, const Plan& p, const CompiledGoal& goal);
WorldState execute(const WorldState& s, const std::vector<GroundedAction>& actions);

enum class TruncateMode { v1_uniform, v2_predictable };

struct Truncation {
  std::vector<GroundedAction> prefix;
  WorldState state;  // after the prefix
  std::size_t step = 0;
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Steps T in [1, |plan|-1] allowed by the mode. The v2 rule keeps T where the human's hand
// is empty and the next object the human picks up shares its category with some object
// touched in the prefix.
std::vector<std::size_t> truncation_points(const WorldState& s0, const Plan& p, TruncateMode mode);
// Uniform draw over truncation_points; throws TruncationError when there is none.
Truncation truncate(const WorldState& s0, const Plan& p, Rng& rng, TruncateMode mode);
// Index of the first human pick-up at or after step t, or -1.
std::ptrdiff_t next_pickup(const Plan& p, std::size_t t);

}  // namespace pragworld
