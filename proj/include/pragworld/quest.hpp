// Subgoal utilities, the meaning lattice, subgoal sampling, utterance generation and
// hardness levels.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pragworld/goals.hpp"
#include "pragworld/planner.hpp"
#include "pragworld/rng.hpp"
#include "pragworld/rsa.hpp"
#include "pragworld/subgoal.hpp"

namespace pragworld {

// Landing state of the robot pursuing mg from s; throws NoPlanError when the robot cannot.
WorldState unroll_subgoal(const WorldState& s, const GroundedSubgoal& mg, const PlannerConfig& config = {});

class QuestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One element of the specifier lattice with its grounding set.
struct LatticeEntry {
  LiftedSubgoal spec;
  GroundingSet set;
  bool meaning = false;  // nonempty and no member already satisfied at s_T
  std::int32_t meaning_index = -1;
};

struct QuestOptions {
  RsaParams rsa;
  PlannerConfig planner;
  int max_entries = 3;  // specifiers besides the category tier
  bool bring_me_only = false;
};

// All quest-side computation for one (s_T, G) context. Gains are cached, so one context can
// serve several subgoal and utterance draws.
class QuestContext {
 public:
  QuestContext(WorldState s_T, const GroundGoal& goal, QuestOptions options = {});

  const WorldState& state() const { return s_; }
  const CompiledGoal& goal() const { return goal_; }
  const QuestOptions& options() const { return opt_; }
  double base_cost() const { return v0_; }  // V*_G(s_T)

  // V*_G(s_T) - V*_G(unroll(s_T, mg)), with 0 when the robot or the human cannot plan.
  double gain(const GroundedSubgoal& mg);
  // Same value computed without the shortcuts for goal-irrelevant objects.
  double exact_gain(const GroundedSubgoal& mg);
  bool useful(const GroundedSubgoal& mg) { return gain(mg) > 0.5; }
  double utility(const GroundingSet& a);

  // Lattice over the useful groundings. Built on first use.
  const std::vector<LatticeEntry>& lattice();
  const std::vector<std::int32_t>& meanings();       // lattice indices
  const std::vector<double>& meaning_log_prior();     // per meaning
  const std::vector<double>& meaning_utility();       // per meaning
  std::int32_t find(const LiftedSubgoal& spec);       // lattice index or -1

  // Quest type uniform over the types that have meanings, then a Boltzmann draw within it.
  // Returns a lattice index.
  std::int32_t sample_subgoal(Rng& rng);
  // Speaker distribution P_Sk(u|m) over lattice indices with the same quest type and verb.
  std::vector<std::pair<std::int32_t, double>> speaker(std::int32_t m);
  std::int32_t sample_utterance(std::int32_t m, Rng& rng);
  // Pragmatic listener argmax with lowest-cost then lexicographic tie-break.
  std::int32_t listener_argmax(std::int32_t u);
  int classify(std::int32_t m, std::int32_t u);

  // Groundings of mg-type that are useful.
  std::vector<GroundedSubgoal> useful_members(const GroundingSet& a);
  // Worst normalisation error over every RSA solve so far.
  double max_rsa_error() const { return max_rsa_err_; }
  const RsaSolution& rsa_for(QuestType type, Verb verb);

 private:
  struct Partition {
    std::vector<std::int32_t> utterances;  // lattice indices
    std::vector<std::int32_t> meanings;    // lattice indices
    std::unordered_map<std::int32_t, std::int32_t> u_pos, m_pos;
    std::optional<RsaSolution> solution;
  };
  double human_cost(const WorldState& s);
  void build_lattice();
  void precompute_gains();
  Partition& partition(QuestType type, Verb verb);

  WorldState s_;
  CompiledGoal goal_;
  QuestOptions opt_;
  double v0_ = 0.0;
  // Goal-relevant objects, and objects whose handling can touch them (held by the human or
  // behind a closed relevant container). Only these get individually planned gains.
  std::vector<char> core_, special_;
  std::unordered_map<std::uint64_t, double> human_memo_;
  bool gains_ready_ = false;
  std::vector<double> bring_gain_;                            // per object
  std::map<Verb, std::vector<double>> state_gain_;            // per verb, per object
  std::unordered_map<ObjectIndex, std::vector<double>> move_gain_;  // special x -> per target
  std::vector<double> into_gain_;                             // ordinary x -> per target
  std::vector<LatticeEntry> lattice_;
  std::map<LiftedSubgoal, std::int32_t> index_;
  std::vector<std::int32_t> meanings_;
  std::vector<double> log_prior_, utility_;
  bool lattice_ready_ = false;
  std::map<std::pair<QuestType, Verb>, Partition> partitions_;
  double max_rsa_err_ = 0.0;
};

// Free-function forms over a fresh context.
double subgoal_utility(const WorldState& s_T, const LiftedSubgoal& m, const GroundGoal& g, const QuestOptions& o = {});
LiftedSubgoal sample_subgoal(const WorldState& s_T, const GroundGoal& g, Rng& rng, const QuestOptions& o = {});

// Speaker over explicit candidates: meanings with prior, utterances, literal relation via
// grounding sets at s.
std::vector<double> rsa_speaker(const WorldState& s, const LiftedSubgoal& m, const std::vector<LiftedSubgoal>& meanings,
                                const std::vector<double>& prior, const std::vector<LiftedSubgoal>& utterances,
                                const RsaParams& params);

}  // namespace pragworld
