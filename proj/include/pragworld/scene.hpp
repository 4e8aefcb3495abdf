// Initial-state sampling.
#pragma once

#include <cstdint>

#include "pragworld/world.hpp"

namespace pragworld {

struct SceneConfig {
  std::uint64_t rng_seed = 0;
  int max_instances_per_category = 3;
  double stained_dusty_probability = 1.0 / 3.0;
};

void validate(const SceneConfig& config);

// Four steps: one instance per location category, per-category instance counts with every
// movable subclass non-empty, table-driven positions, then attributes.
WorldState sample_scene(const SceneConfig& config);

// Makes an object id from a category name: spaces become underscores, plus "#k".
std::string make_object_id(std::string_view category, int k);

}  // namespace pragworld
