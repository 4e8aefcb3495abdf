// Episode records, the generation pipeline and dataset assembly.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pragworld/goals.hpp"
#include "pragworld/planner.hpp"
#include "pragworld/quest.hpp"
#include "pragworld/scene.hpp"

namespace pragworld {

struct EpisodeSpec {
  std::uint64_t seed = 0;
  Version version = Version::v1;
  WorldState scene;  // s0
  GroundGoal goal;
  std::vector<GroundedAction> trajectory;  // the prefix the robot observes
  std::size_t plan_length = 0;             // length of the human's full plan
  std::string s_T_digest;
  LiftedSubgoal subgoal;    // meaning m
  LiftedSubgoal utterance;  // u
  std::string utterance_text;
  int hardness = 0;
  std::string split = "train";
  std::vector<GroundedAction> expert_demo;
  std::string subgoal_annotation;  // goal conjunct the human was pursuing

  // Replays the trajectory from the scene.
  WorldState quest_state() const;
};

Json episode_to_json(const EpisodeSpec& e);
EpisodeSpec episode_from_json(const Json& j);
// Key-sorted compact JSON plus a trailing newline.
std::string episode_to_string(const EpisodeSpec& e);
EpisodeSpec load_episode(const std::string& path);
void save_episode(const std::string& path, const EpisodeSpec& e);

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerationOptions {
  Version version = Version::v1;
  std::optional<int> target_level;  // 1..4
  int retry_budget = 50;
  int level_draws = 24;      // (m, u) redraws per context while stratifying
  int demo_candidates = 6;   // members planned when picking the cheapest one
  QuestOptions quest;
  PlannerConfig planner;
};

void validate(const GenerationOptions& o);

// Deterministic per (seed, options). Attempt k draws from Rng(seed).split("attempt", k).
EpisodeSpec generate_episode(std::uint64_t seed, const GenerationOptions& options = {});

// Cheapest of the candidate groundings for the robot: candidates are ranked by the relaxed
// heuristic, the best `k` are planned, and the lowest plan cost wins (then candidate order).
// Returns the plan and writes the chosen candidate index. Throws NoPlanError if none plans.
Plan cheapest_grounding_plan(const WorldState& s, const std::vector<GroundedSubgoal>& candidates, int k,
                             const PlannerConfig& config, std::size_t* chosen = nullptr);
Plan expert_demo(const EpisodeSpec& e, int k = 6, const PlannerConfig& config = {});

// Members of A(m) evaluated at the quest state.
std::vector<GroundedSubgoal> subgoal_members(const EpisodeSpec& e);
// Builds a fresh quest context and re-derives the hardness level of (m, u).
int rederive_hardness(const EpisodeSpec& e, const QuestOptions& o = {});
// Violated invariants of an emitted episode (empty when it is sound). Hardness is re-derived
// only when asked since it replans.
std::vector<std::string> episode_problems(const EpisodeSpec& e, bool check_hardness);

struct DatasetOptions {
  std::size_t n = 100;
  Version version = Version::v1;
  std::array<double, 3> split_ratios{0.8, 0.1, 0.1};
  std::uint64_t seed = 0;
  bool stratify = true;  // equal counts per level; v2 is never stratified
  std::optional<int> level;  // every episode at this level
  GenerationOptions generation;
};

void validate(const DatasetOptions& o);

struct ManifestRecord {
  std::string path;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  int level = 0;
  QuestType type = QuestType::bring_me;
  std::string split;
};

// Per-episode seeds, target levels and splits of a dataset.
struct DatasetPlan {
  std::vector<std::uint64_t> seeds;
  std::vector<std::optional<int>> levels;
  std::vector<std::string> splits;
};
DatasetPlan plan_dataset(const DatasetOptions& o);

// Episodes in index order. Failed seeds raise GenerationError.
std::vector<EpisodeSpec> generate_dataset_serial(const DatasetOptions& o);
std::vector<EpisodeSpec> generate_dataset_parallel(const DatasetOptions& o, int threads = 0);
// Writes episode_NNNNN.json files and manifest.jsonl; returns the manifest.
std::vector<ManifestRecord> write_dataset(const std::string& out_dir, const std::vector<EpisodeSpec>& episodes);
std::vector<ManifestRecord> read_manifest(const std::string& path);
// Episodes listed in dir/manifest.jsonl, in manifest order.
std::vector<EpisodeSpec> load_dataset(const std::string& dir);
Json manifest_summary(const std::vector<ManifestRecord>& records);

}  // namespace pragworld
