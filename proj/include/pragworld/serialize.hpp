// Canonical key-sorted JSON for states and actions.
#pragma once

#include <json.hpp>
#include <string>

#include "pragworld/actions.hpp"
#include "pragworld/world.hpp"

namespace pragworld {

using Json = nlohmann::json;

Json state_to_json(const WorldState& s);
// Builds a fresh universe from the serialized objects.
WorldState state_from_json(const Json& j);
// Reads positions, flags and agents into an existing universe (ids must match).
WorldState state_from_json(const Json& j, std::shared_ptr<const Universe> universe);

std::string canonical_string(const WorldState& s);
std::string state_digest(const WorldState& s);  // 16 hex chars, FNV-1a 64 of canonical form

Json action_to_json(const Universe& u, const GroundedAction& a);
GroundedAction action_from_json(const Universe& u, const Json& j);

}  // namespace pragworld
