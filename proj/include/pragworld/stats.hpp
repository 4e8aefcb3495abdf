// Corpus statistics: sizes, lengths, observation tokens and the level/type/split table.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "pragworld/episode.hpp"

namespace pragworld {

struct EpisodeMeasures {
  std::size_t objects = 0;     // instances in the scene, locations included
  std::size_t categories = 0;  // categories with at least one instance
  std::size_t omega = 0;
  std::size_t plan = 0;
  std::size_t demo = 0;
  std::size_t tokens_full = 0;     // welcome plus examine
  std::size_t tokens_partial = 0;
  int level = 0;
  QuestType type = QuestType::bring_me;
  std::string split;
};

EpisodeMeasures measure(const EpisodeSpec& e);

struct CorpusStats {
  std::size_t episodes = 0;
  double mean_objects = 0, mean_categories = 0, mean_omega = 0, mean_plan = 0, mean_demo = 0;
  double mean_tokens_full = 0, mean_tokens_partial = 0;
  std::size_t demo_mode = 0;
  std::map<std::size_t, std::size_t> objects_hist, omega_hist, plan_hist, demo_hist;
  std::map<std::size_t, std::size_t> tokens_full_hist, tokens_partial_hist;  // bucketed by 50 and 10
  // level -> quest type name -> count, and split -> count
  std::map<int, std::map<std::string, std::size_t>> level_type;
  std::map<std::string, std::size_t> splits;

  Json to_json() const;
  std::string report() const;
};

CorpusStats summarize(const std::vector<EpisodeMeasures>& ms);
std::vector<EpisodeMeasures> measure_all(const std::vector<EpisodeSpec>& episodes, int threads = 0);

}  // namespace pragworld
