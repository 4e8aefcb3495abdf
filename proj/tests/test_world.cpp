#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "pragworld/serialize.hpp"

using namespace pragworld;
using fixtures::kitchen;

namespace {

// Object indices whose state differs between two states over the same universe.
std::set<ObjectIndex> changed(const WorldState& a, const WorldState& b) {
  std::set<ObjectIndex> out;
  for (std::size_t i = 0; i < a.universe().size(); ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    if (!(a.at(x) == b.at(x))) out.insert(x);
  }
  return out;
}

}  // namespace

TEST_CASE("catalog has the full hierarchy") {
  const auto& cat = Catalog::instance();
  CHECK(cat.categories().size() == 155);
  CHECK(cat.location_categories().size() == 16);
  for (const auto& c : cat.categories()) {
    if (c.cls == ObjectClass::food) {
      CHECK(c.meta.has(Meta::cookable));
      CHECK(c.meta.has(Meta::freezable));
    }
    if (c.cls == ObjectClass::location) CHECK(c.meta.has(Meta::stainable));
  }
  CHECK(cat.category(cat.category_id("refrigerator")).meta.has(Meta::openable));
  CHECK(cat.category(cat.category_id("box")).meta.has(Meta::has_size));
  CHECK(!cat.category(cat.category_id("apple")).meta.has(Meta::has_inside));
  CHECK(is_knife_category("knife"));
  CHECK(is_knife_category("carving knife"));
  CHECK(!is_knife_category("fork"));
  CHECK(is_cleaning_tool_category("rag"));
}

TEST_CASE("applicability follows the constraint table") {
  auto k = kitchen();
  const auto& s = k.s;
  // closed refrigerator
  auto at_fridge = s;
  at_fridge.set_agent_location(Agent::robot, k.refrigerator);
  CHECK(!applicable(at_fridge, make_action(Schema::pick_up_at_loc, Agent::robot, {k.banana, k.refrigerator})));
  at_fridge.set_flag(k.refrigerator, Flag::open, true);
  CHECK(applicable(at_fridge, make_action(Schema::pick_up_at_loc, Agent::robot, {k.banana, k.refrigerator})));
  CHECK(!applicable(s, make_action(Schema::move, Agent::robot, {k.floor, k.floor})));
  CHECK(applicable(s, make_action(Schema::move, Agent::robot, {k.floor, k.table})));

  // slice with a held knife at the table
  auto t = s;
  t.set_agent_location(Agent::robot, k.table);
  t.give_to(Agent::robot, k.knife);
  const auto slice = make_action(Schema::slice_obj, Agent::robot, {k.apple1, k.knife, k.table});
  CHECK(applicable(t, slice));
  auto t2 = s;
  t2.set_agent_location(Agent::robot, k.table);
  CHECK(check_action(t2, slice) == std::optional<std::string>("agent must hold a knife"));

  // human cannot use robot-only schemas
  auto h = s;
  h.give_to(Agent::human, k.apple1);
  CHECK(!applicable(h, make_action(Schema::take_from_human, Agent::human, {k.apple1})));
  CHECK(applicable(h, make_action(Schema::take_from_human, Agent::robot, {k.apple1})));

  // unknown ids are an error, not "false"
  GroundedAction bad = make_action(Schema::pick_up_at_loc, Agent::robot, {static_cast<ObjectIndex>(500), k.floor});
  CHECK_THROWS_AS(check_action(s, bad), UnknownObjectError);
}

TEST_CASE("apply has exactly the schema effects") {
  auto k = kitchen();
  auto s = k.s;
  s.set_agent_location(Agent::robot, k.refrigerator);
  const auto opened = apply(s, make_action(Schema::open_loc, Agent::robot, {k.refrigerator}));
  CHECK(opened.flag(k.refrigerator, Flag::open));
  CHECK(changed(s, opened) == std::set<ObjectIndex>{k.refrigerator});
  CHECK(!s.flag(k.refrigerator, Flag::open));  // input untouched

  auto t = k.s;
  t.set_agent_location(Agent::robot, k.table);
  const auto picked = apply(t, make_action(Schema::pick_up_at_loc, Agent::robot, {k.apple1, k.table}));
  CHECK(picked.holding(Agent::robot) == k.apple1);
  const auto back = apply(picked, make_action(Schema::put_ontop_loc, Agent::robot, {k.apple1, k.table}));
  CHECK(back == t);

  t.give_to(Agent::robot, k.knife);
  const auto sliced = apply(t, make_action(Schema::slice_obj, Agent::robot, {k.apple1, k.knife, k.table}));
  CHECK(sliced.flag(k.apple1, Flag::sliced));
  CHECK(sliced.at(k.apple1).holder == k.table);
  CHECK(changed(t, sliced) == std::set<ObjectIndex>{k.apple1});

  CHECK_THROWS_AS(apply(k.s, make_action(Schema::pick_up_at_loc, Agent::robot, {k.apple1, k.table})),
                  PreconditionError);
}

TEST_CASE("carried receptacles keep their contents out of reach") {
  auto k = kitchen();
  const auto picked = apply(k.s, make_action(Schema::pick_up_at_loc, Agent::robot, {k.box, k.floor}));
  CHECK(picked.at(k.rag).holder == k.box);
  CHECK(!picked.accessible_at(k.rag, k.floor));
  for (const auto& a : valid_actions(picked, Agent::robot)) {
    if (a.schema == Schema::pick_up_from_rec_at_loc) CHECK(a.args[0] != k.rag);
  }
}

TEST_CASE("valid_actions in an empty room") {
  fixtures::WorldBuilder b;
  ObjectIndex floor = kNone;
  for (auto c : Catalog::instance().location_categories()) {
    const auto i = b.add(Catalog::instance().category(c).name);
    if (Catalog::instance().category(c).name == "floor") floor = i;
  }
  const auto s = b.build(floor);
  const auto acts = valid_actions(s, Agent::robot);
  std::size_t moves = 0, meta = 0, other = 0;
  for (const auto& a : acts) {
    if (a.schema == Schema::move) ++moves;
    else if (is_meta_schema(a.schema)) ++meta;
    else ++other;
  }
  CHECK(moves == 15);
  CHECK(meta == 2);
  CHECK(other == 0);
  CHECK(action_cost(s, make_action(Schema::examine, Agent::robot, {})) == 0.0);
  CHECK(action_cost(s, make_action(Schema::inventory, Agent::robot, {})) == 0.0);
  for (const auto& a : acts) CHECK(action_cost(s, a) == (is_meta_schema(a.schema) ? 0.0 : 1.0));
}

TEST_CASE("valid_actions on sampled scenes") {
  // "Typical" scenes: at least 95 of 100 fall in [10, 60]; a crowded floor can exceed it.
  std::size_t total = 0, typical = 0, largest = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SceneConfig c;
    c.rng_seed = seed;
    const auto s = sample_scene(c);
    const auto acts = valid_actions(s, Agent::robot);
    typical += acts.size() >= 10 && acts.size() <= 60;
    largest = std::max(largest, acts.size());
    total += acts.size();
    for (const auto& a : acts) {
      CHECK(applicable(s, a));
      CHECK(a.schema != Schema::put_ontop_loc);
      CHECK(a.schema != Schema::bring_to_human);
    }
    // deterministic order
    CHECK(acts == valid_actions(s, Agent::robot));
  }
  MESSAGE("mean valid actions at s0: " << static_cast<double>(total) / 100.0 << ", largest " << largest);
  CHECK(typical >= 95);
}

TEST_CASE("random walks keep state invariants and apply deterministically") {
  SceneConfig c;
  c.rng_seed = 11;
  auto s = sample_scene(c);
  Rng rng(5);
  double cost = 0.0;
  for (int step = 0; step < 300; ++step) {
    const Agent ag = step % 2 ? Agent::robot : Agent::human;
    const auto acts = valid_actions(s, ag);
    const auto a = rng.pick(acts);
    const auto next = apply(s, a);
    CHECK(canonical_string(next) == canonical_string(apply(s, a)));
    CHECK_NOTHROW(next.validate());
    cost += action_cost(s, a);
    s = next;
  }
  CHECK(cost <= 300.0);
}

TEST_CASE("state serialization round-trips") {
  SceneConfig c;
  c.rng_seed = 3;
  const auto s = sample_scene(c);
  const auto j = state_to_json(s);
  const auto back = state_from_json(j);
  CHECK(canonical_string(back) == canonical_string(s));
  CHECK(state_digest(back) == state_digest(s));
  const auto same_u = state_from_json(j, s.universe_ptr());
  CHECK(same_u == s);
  const auto& u = s.universe();
  for (const auto& a : valid_actions(s, Agent::robot)) {
    CHECK(parse_action_key(u, action_key(u, a)) == a);
    CHECK(action_from_json(u, action_to_json(u, a)) == a);
  }
}
