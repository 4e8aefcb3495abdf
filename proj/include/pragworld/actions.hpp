// Action schemas, preconditions, effects and costs.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pragworld/world.hpp"

namespace pragworld {

enum class Schema : std::uint8_t {
  move,
  pick_up_at_loc,
  pick_up_from_rec_at_loc,
  put_inside_loc,
  put_ontop_loc,
  put_inside_rec_at_loc,
  put_ontop_rec_at_loc,
  open_loc,
  close_loc,
  open_rec_at_loc,
  close_rec_at_loc,
  toggle_on_loc,
  toggle_off_loc,
  toggle_on_obj_at_loc,
  toggle_off_obj_at_loc,
  heat_obj,
  cool_obj,
  soak_obj,
  slice_obj,
  clean_obj_at_loc,
  clean_loc,
  bring_to_human,
  take_from_human,
  examine,
  inventory,
};
inline constexpr int kSchemaCount = 25;

std::string_view schema_name(Schema s);
std::optional<Schema> parse_schema(std::string_view name);
int schema_arity(Schema s);  // object arguments, agent excluded
bool is_meta_schema(Schema s);  // examine / inventory

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundedAction {
  Schema schema = Schema::examine;
  Agent agent = Agent::robot;
  std::array<ObjectIndex, 3> args{kNone, kNone, kNone};

  bool operator==(const GroundedAction&) const = default;
};

GroundedAction make_action(Schema s, Agent a, std::initializer_list<ObjectIndex> args);

// Canonical textual key "schema agent id id ..." used for ordering and serialization.
std::string action_key(const Universe& u, const GroundedAction& a);
GroundedAction parse_action_key(const Universe& u, std::string_view key);

// Returns the first failed precondition, or nullopt when applicable.
// Unknown object indices raise UnknownObjectError.
std::optional<std::string> check_action(const WorldState& s, const GroundedAction& a);
bool applicable(const WorldState& s, const GroundedAction& a);
WorldState apply(const WorldState& s, const GroundedAction& a);
// In-place variant used by search; assumes applicability was checked.
void apply_in_place(WorldState& s, const GroundedAction& a);
double action_cost(const WorldState& s, const GroundedAction& a);

// Candidate actions over a pool of objects. Every emitted action is applicable.
// `pool` lists the movable objects and receptacles the generator may touch; locations are
// always considered. When include_meta is set, examine and inventory are appended.
void enumerate_actions(const WorldState& s, Agent agent, std::span<const ObjectIndex> pool,
                       bool include_meta, std::vector<GroundedAction>& out);

// All applicable actions, sorted by (schema name, argument ids).
std::vector<GroundedAction> valid_actions(const WorldState& s, Agent agent);

}  // namespace pragworld
