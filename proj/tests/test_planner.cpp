#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pragworld/goals.hpp"
#include "pragworld/planner.hpp"
#include "pragworld/scene.hpp"
#include "pragworld/subgoal.hpp"

using namespace pragworld;
using fixtures::optimal_length;
using oracles::random_instance;

TEST_CASE("bring-me from the sink takes four robot actions") {
  fixtures::WorldBuilder b;
  const auto floor = b.add("floor");
  const auto sink = b.add("sink");
  const auto table = b.add("table");
  const auto knife = b.add("knife");
  const auto apple = b.add("apple");
  b.put(knife, Relation::in, sink);
  b.put(apple, Relation::on, table);
  const auto s = b.build(floor);
  const GroundedSubgoal mg{QuestType::bring_me, knife, kNone, Verb::none};
  const auto goal = compile(s.universe(), mg);
  const auto p = plan(s, Agent::robot, goal);
  CHECK(p.size() == 4);
  CHECK(p.total_cost == 4.0);
  CHECK(optimal_length(s, Agent::robot, goal) == std::optional<std::size_t>(4));
  CHECK(holds(validate_plan(s, p, goal), mg));
  // deterministic
  CHECK(plan(s, Agent::robot, goal).actions == p.actions);
}

TEST_CASE("satisfied and unreachable goals") {
  auto k = fixtures::kitchen();
  Literal on_table;
  on_table.kind = LitKind::position;
  on_table.x = k.apple1;
  on_table.y = k.table;
  on_table.rel = Relation::on;
  const auto done = CompiledGoal::single(on_table);
  const auto p = plan(k.s, Agent::human, done);
  CHECK(p.size() == 0);
  CHECK(p.total_cost == 0.0);
  CHECK(relaxed_heuristic(k.s, Agent::human, done) == 0);

  Literal sliced;
  sliced.kind = LitKind::flag;
  sliced.x = k.apple1;
  sliced.flag = Flag::sliced;
  const auto slice_goal = CompiledGoal::single(sliced);
  CHECK(relaxed_heuristic(k.s, Agent::human, slice_goal) > 0);
  const auto sp = plan(k.s, Agent::human, slice_goal);
  CHECK(validate_plan(k.s, sp, slice_goal).flag(k.apple1, Flag::sliced));

  // Nothing can heat in this kitchen: no microwave, oven or stove.
  Literal cooked;
  cooked.kind = LitKind::flag;
  cooked.x = k.apple1;
  cooked.flag = Flag::cooked;
  CHECK(relaxed_heuristic(k.s, Agent::human, CompiledGoal::single(cooked)) < 0);
  CHECK_THROWS_AS(plan(k.s, Agent::human, CompiledGoal::single(cooked)), NoPlanError);

  PlannerConfig bad;
  bad.node_budget = 0;
  CHECK_THROWS(validate(bad));
}

TEST_CASE("plans re-validate through the world model") {
  auto k = fixtures::kitchen();
  Plan bogus;
  bogus.actions.push_back(make_action(Schema::pick_up_at_loc, Agent::human, {k.apple1, k.table}));
  Literal l;
  l.kind = LitKind::human_holds;
  l.x = k.apple1;
  CHECK_THROWS(validate_plan(k.s, bogus, CompiledGoal::single(l)));
}

TEST_CASE("GBFS cost stays within 1.5x of the optimum on six-object instances") {
  Rng rng(31337);
  int checked = 0;
  double worst = 1.0;
  while (checked < 50) {
    const auto in = random_instance(rng);
    const auto opt = optimal_length(in.s, Agent::human, in.goal);
    if (!opt) continue;
    const auto p = plan(in.s, Agent::human, in.goal);
    validate_plan(in.s, p, in.goal);
    const double ratio = *opt == 0 ? 1.0 : p.total_cost / static_cast<double>(*opt);
    worst = std::max(worst, ratio);
    CHECK_MESSAGE(p.total_cost <= 1.5 * static_cast<double>(*opt), in.text);
    ++checked;
  }
  MESSAGE("worst GBFS / optimum ratio " << worst);
}

TEST_CASE("goal plans reach every conjunct and the heuristic vanishes there") {
  Rng rng(8);
  int planned = 0;
  for (std::uint64_t seed = 0; seed < 20 && planned < 8; ++seed) {
    SceneConfig c;
    c.rng_seed = seed;
    const auto s = sample_scene(c);
    const auto g = sample_goal(Version::v2, rng);
    const auto cg = CompiledGoal::compile(s.universe(), g);
    Plan p;
    try {
      p = plan(s, Agent::human, cg);
    } catch (const NoPlanError&) {
      continue;
    }
    ++planned;
    const auto end = validate_plan(s, p, cg);
    CHECK(satisfied_conjuncts(end, g) == g.conjunct_count());
    CHECK(relaxed_heuristic(end, Agent::human, cg) == 0);
    if (p.size() > 0) CHECK(relaxed_heuristic(s, Agent::human, cg) > 0);
  }
  CHECK(planned >= 5);
}

TEST_CASE("truncation modes") {
  fixtures::WorldBuilder b;
  const auto floor = b.add("floor");
  const auto table = b.add("table");
  const auto shelf = b.add("shelf");
  const auto a1 = b.add("apple");
  const auto a2 = b.add("apple");
  const auto hat = b.add("hat");
  b.put(a1, Relation::on, table);
  b.put(a2, Relation::on, table);
  b.put(hat, Relation::on, table);
  const auto s = b.build(floor);
  auto act = [](Schema sc, std::initializer_list<ObjectIndex> args) { return make_action(sc, Agent::human, args); };
  Plan p;
  p.actions = {act(Schema::move, {floor, table}),        act(Schema::pick_up_at_loc, {a1, table}),
               act(Schema::move, {table, shelf}),        act(Schema::put_ontop_loc, {a1, shelf}),
               act(Schema::move, {shelf, table}),        act(Schema::pick_up_at_loc, {a2, table}),
               act(Schema::move, {table, shelf}),        act(Schema::put_ontop_loc, {a2, shelf}),
               act(Schema::move, {shelf, table}),        act(Schema::pick_up_at_loc, {hat, table}),
               act(Schema::move, {table, shelf}),        act(Schema::put_ontop_loc, {hat, shelf})};
  p.total_cost = 12;
  const auto v1 = truncation_points(s, p, TruncateMode::v1_uniform);
  CHECK(v1.size() == 11);
  CHECK(v1.front() == 1);
  CHECK(v1.back() == 11);
  // v2: empty hand and the next pick-up is an apple after an apple was handled.
  const auto v2 = truncation_points(s, p, TruncateMode::v2_predictable);
  CHECK(v2 == std::vector<std::size_t>{4, 5});
  CHECK(next_pickup(p, 4) == 5);
  CHECK(next_pickup(p, 10) == -1);

  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto t = truncate(s, p, rng, TruncateMode::v2_predictable);
    CHECK((t.step == 4 || t.step == 5));
    CHECK(t.prefix.size() == t.step);
    CHECK(t.state == execute(s, t.prefix));
  }
  Plan tiny;
  tiny.actions = {act(Schema::move, {floor, table})};
  CHECK_THROWS_AS(truncate(s, tiny, rng, TruncateMode::v1_uniform), TruncationError);
  CHECK_THROWS_AS(truncate(s, Plan{}, rng, TruncateMode::v1_uniform), std::invalid_argument);
}
