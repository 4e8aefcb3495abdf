// Grounded and lifted subgoals, grounding sets and quest cost.
#pragma once

#include <boost/dynamic_bitset.hpp>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pragworld/goal_compile.hpp"
#include "pragworld/serialize.hpp"
#include "pragworld/world.hpp"

namespace pragworld {

enum class QuestType : std::uint8_t { bring_me, move_to, change_state };
enum class Verb : std::uint8_t { none, open, close, toggle_on, toggle_off, heat, cool, soak, slice, clean };
inline constexpr Verb kAllVerbs[] = {Verb::open, Verb::close, Verb::toggle_on, Verb::toggle_off, Verb::heat,
                                     Verb::cool, Verb::soak, Verb::slice, Verb::clean};
// Verbs the human asks for. Opening and closing only give access, so they stay part of the
// pick-and-place quests.
inline constexpr Verb kQuestVerbs[] = {Verb::toggle_on, Verb::toggle_off, Verb::heat, Verb::cool,
                                       Verb::soak,      Verb::slice,      Verb::clean};

std::string_view quest_type_name(QuestType t);
QuestType parse_quest_type(std::string_view s);
std::string_view verb_name(Verb v);
Verb parse_verb(std::string_view s);
// Whether the object can be the subject of a change-state verb.
bool verb_applies(const Universe& u, ObjectIndex x, Verb v);

struct GroundedSubgoal {
  QuestType type = QuestType::bring_me;
  ObjectIndex object = kNone;
  ObjectIndex target = kNone;  // move-to only
  Verb verb = Verb::none;      // change-state only

  auto operator<=>(const GroundedSubgoal&) const = default;
};

void validate(const Universe& u, const GroundedSubgoal& g);
// Satisfaction literals: human holds x / x directly in or on target / the verb's flag values.
CompiledGoal compile(const Universe& u, const GroundedSubgoal& g);
bool holds(const WorldState& s, const GroundedSubgoal& g);
std::string to_string(const Universe& u, const GroundedSubgoal& g);

enum class Tier : std::uint8_t { none, cls, subclass, category };

enum class AttrKind : std::uint8_t { size, color, flag };
struct Attr {
  AttrKind kind = AttrKind::size;
  std::uint8_t code = 0;  // Size, Color or Flag value
  bool value = true;      // flags only

  auto operator<=>(const Attr&) const = default;
};

struct SourceSpec {
  Relation rel = Relation::on;
  CategoryId holder = 0;

  auto operator<=>(const SourceSpec&) const = default;
};

// A quest with specifiers in place of object ids. Also the utterance representation.
struct LiftedSubgoal {
  QuestType type = QuestType::bring_me;
  Verb verb = Verb::none;
  Tier tier = Tier::none;
  std::uint16_t tier_id = 0;  // ObjectClass, SubclassId or CategoryId
  std::vector<Attr> attrs;    // sorted, unique
  std::optional<SourceSpec> source;
  std::optional<CategoryId> target;  // move-to only

  // Specifier entries other than the tier.
  int entry_count() const { return static_cast<int>(attrs.size()) + (source ? 1 : 0) + (target ? 1 : 0); }
  auto operator<=>(const LiftedSubgoal&) const = default;
};

void validate(const LiftedSubgoal& m);
// 1/2/3 for a class/subclass/category tier, plus one per other specifier.
int quest_cost(const LiftedSubgoal& m);
// Stable text key, also used for lexicographic tie-breaks.
std::string describe(const LiftedSubgoal& m);
Json to_json(const LiftedSubgoal& m);
LiftedSubgoal lifted_from_json(const Json& j);
Json to_json(const Universe& u, const GroundedSubgoal& g);
GroundedSubgoal grounded_from_json(const Universe& u, const Json& j);

// Object-side filter evaluated against direct positions at s.
bool object_matches(const WorldState& s, const LiftedSubgoal& m, ObjectIndex x);
bool target_matches(const Universe& u, const LiftedSubgoal& m, ObjectIndex t);
// Objects that can be the subject (x) or the target (t) of this quest type at all.
bool subject_admissible(const Universe& u, QuestType type, Verb verb, ObjectIndex x);
bool target_admissible(const Universe& u, ObjectIndex t);
bool valid_pair(const Universe& u, ObjectIndex x, ObjectIndex t);

using Bitset = boost::dynamic_bitset<std::uint64_t>;

// Set of grounded subgoals of one quest type. Move-to sets are the valid pairs of
// objects x targets; the other types ignore `targets`.
struct GroundingSet {
  QuestType type = QuestType::bring_me;
  Verb verb = Verb::none;
  Bitset objects;
  Bitset targets;
  // Subjects split by receptacle-ness, which restricts their valid targets.
  Bitset receptacle_mask;
  Bitset location_mask;
  // Derived by finalize(): subjects that pair with some target, split by receptacle-ness,
  // and the location targets.
  Bitset live_plain, live_receptacle, location_targets;

  void finalize();
  // Objects appearing in some member.
  Bitset live_objects() const { return live_plain | live_receptacle; }

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool contains(const GroundedSubgoal& g) const;
  std::vector<GroundedSubgoal> members(const Universe& u) const;
};

GroundingSet grounding_set(const LiftedSubgoal& m, const WorldState& s);
// A(a) is a subset of A(b).
bool subset_of(const GroundingSet& a, const GroundingSet& b);
bool same_set(const GroundingSet& a, const GroundingSet& b);
int literal_meaning(const GroundingSet& u, const GroundingSet& m);
int literal_meaning(const LiftedSubgoal& u, const LiftedSubgoal& m, const WorldState& s);

// All specifier subsets of m (tier kept or dropped, each entry kept or dropped), m included.
std::vector<LiftedSubgoal> relaxations(const LiftedSubgoal& m);

// Specifier entries an object realizes at s (tier options excluded).
std::vector<Attr> object_attrs(const WorldState& s, ObjectIndex x, Verb verb);
std::optional<SourceSpec> object_source(const WorldState& s, ObjectIndex x);

}  // namespace pragworld
