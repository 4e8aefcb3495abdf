// Object universe and world state.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pragworld/catalog.hpp"

namespace pragworld {

using ObjectIndex = std::int16_t;
inline constexpr ObjectIndex kNone = -1;
inline constexpr ObjectIndex kHeldByHuman = -2;
inline constexpr ObjectIndex kHeldByRobot = -3;

enum class Agent : std::uint8_t { human = 0, robot = 1 };
enum class Relation : std::uint8_t { none = 0, in = 1, on = 2 };

std::string_view agent_name(Agent a);
std::string_view relation_name(Relation r);
inline ObjectIndex held_marker(Agent a) { return a == Agent::human ? kHeldByHuman : kHeldByRobot; }

class UnknownObjectError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ObjectInstance {
  std::string id;
  CategoryId category;
  Size size = Size::none;
  Color color = Color::none;
};

// Immutable set of objects shared by every state of an episode.
class Universe {
 public:
  explicit Universe(std::vector<ObjectInstance> objects);

  std::size_t size() const { return objects_.size(); }
  const ObjectInstance& object(ObjectIndex i) const { return objects_.at(static_cast<std::size_t>(i)); }
  const std::vector<ObjectInstance>& objects() const { return objects_; }
  const CategorySpec& category_of(ObjectIndex i) const;
  ObjectClass class_of(ObjectIndex i) const { return category_of(i).cls; }
  bool has_meta(ObjectIndex i, Meta m) const { return category_of(i).meta.has(m); }
  bool is_location(ObjectIndex i) const { return class_of(i) == ObjectClass::location; }
  bool is_receptacle(ObjectIndex i) const { return class_of(i) == ObjectClass::receptacle; }
  bool is_movable(ObjectIndex i) const { return !is_location(i); }

  std::optional<ObjectIndex> find(std::string_view id) const;
  ObjectIndex index_of(std::string_view id) const;  // throws UnknownObjectError
  const std::vector<ObjectIndex>& instances_of(CategoryId c) const;
  const std::vector<ObjectIndex>& locations() const { return locations_; }
  // First instance of a location category, or kNone.
  ObjectIndex location_named(std::string_view name) const;

 private:
  std::vector<ObjectInstance> objects_;
  std::unordered_map<std::string, ObjectIndex> by_id_;
  std::vector<std::vector<ObjectIndex>> by_category_;
  std::vector<ObjectIndex> locations_;
};

struct ObjectState {
  ObjectIndex holder = kNone;  // object index, kNone for locations, or a held marker
  Relation relation = Relation::none;
  std::uint8_t flags = 0;

  bool flag(Flag f) const { return (flags >> static_cast<int>(f)) & 1u; }
  void set_flag(Flag f, bool v) {
    const auto bit = static_cast<std::uint8_t>(1u << static_cast<int>(f));
    flags = v ? static_cast<std::uint8_t>(flags | bit) : static_cast<std::uint8_t>(flags & ~bit);
  }
  bool operator==(const ObjectState&) const = default;
};

class WorldState {
 public:
  WorldState() = default;
  explicit WorldState(std::shared_ptr<const Universe> universe);

  const Universe& universe() const { return *universe_; }
  const std::shared_ptr<const Universe>& universe_ptr() const { return universe_; }

  const ObjectState& at(ObjectIndex i) const { return objects_[static_cast<std::size_t>(i)]; }
  ObjectState& at(ObjectIndex i) { return objects_[static_cast<std::size_t>(i)]; }
  const std::vector<ObjectState>& object_states() const { return objects_; }

  ObjectIndex agent_location(Agent a) const { return agent_loc_[static_cast<int>(a)]; }
  void set_agent_location(Agent a, ObjectIndex loc) { agent_loc_[static_cast<int>(a)] = loc; }
  ObjectIndex holding(Agent a) const { return holding_[static_cast<int>(a)]; }
  // Raw setter for search bookkeeping; callers keep object holders consistent.
  void set_holding_raw(Agent a, ObjectIndex obj) { holding_[static_cast<int>(a)] = obj; }

  bool flag(ObjectIndex i, Flag f) const { return at(i).flag(f); }
  // Setting a flag the category cannot carry is rejected.
  void set_flag(ObjectIndex i, Flag f, bool v);

  // Place a movable object directly in/on a holder; the relation must match holder meta.
  void place(ObjectIndex obj, Relation rel, ObjectIndex holder);
  void give_to(Agent a, ObjectIndex obj);  // clears previous position
  void clear_holding(Agent a);

  // Location the object ultimately sits at (resolving receptacles and agents).
  ObjectIndex resolved_location(ObjectIndex obj) const;
  bool held_by(Agent a, ObjectIndex obj) const { return holding(a) == obj; }
  bool directly_in(ObjectIndex obj, ObjectIndex holder) const;
  bool directly_on(ObjectIndex obj, ObjectIndex holder) const;
  // Whether a container blocks access to its inside (openable and closed).
  bool closed_container(ObjectIndex holder) const;
  // Object sits at loc (directly, or in/on a receptacle standing directly at loc) with every
  // openable container on the way open.
  bool accessible_at(ObjectIndex obj, ObjectIndex loc) const;

  bool operator==(const WorldState& other) const;

  // Invariant check; throws std::logic_error describing the first violation.
  void validate() const;

 private:
  std::shared_ptr<const Universe> universe_;
  std::vector<ObjectState> objects_;
  std::array<ObjectIndex, 2> agent_loc_{kNone, kNone};
  std::array<ObjectIndex, 2> holding_{kNone, kNone};
};

}  // namespace pragworld
