#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pragworld/goal_compile.hpp"
#include "pragworld/goals.hpp"

using namespace pragworld;
using namespace oracles;

TEST_CASE("template catalog sizes") {
  CHECK(templates_for(Version::v1).size() == 69);
  CHECK(templates_for(Version::v2).size() == 25);
  for (const auto* t : templates_for(Version::v2)) CHECK(!has_change_state_atom(*t));
  CHECK_THROWS_AS(find_template("no such goal"), std::invalid_argument);
}

TEST_CASE("v2 sampling only yields pick-and-place goals") {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    const auto g = sample_goal(Version::v2, rng);
    CHECK(!has_change_state_atom(find_template(g.template_name)));
  }
}

TEST_CASE("instantiation binds placeholders") {
  const auto& t = find_template("boxing books up for storage");
  const auto g = ground_with(t, {{"?[paper product]", "book"}});
  REQUIRE(g.conjunct_count() == 1);
  CHECK(g.conjunct_texts()[0] == to_string(parse_formula("exists y . box(y) & (forall x . book(x) -> in(x, y))")));

  // Indexed placeholders of one subclass bind distinct categories.
  Rng rng(1);
  const auto& bottling = find_template("bottling fruit");
  for (int i = 0; i < 200; ++i) {
    const auto gi = instantiate(bottling, rng);
    REQUIRE(gi.bindings.size() == 2);
    CHECK(gi.bindings[0].second != gi.bindings[1].second);
  }

  // Too few categories for the indices.
  const auto custom = parse_templates(
      "template: two boxes\nversions: v1\nline: forall x . ?[box]_1(x) -> on(x, x)\n"
      "line: forall x . ?[box]_2(x) -> on(x, x)\n");
  CHECK_THROWS_AS(instantiate(custom.at(0), rng), std::invalid_argument);
  CHECK_THROWS_AS(parse_templates("template: broken\nversions: v1\nline: forall x . (apple(x)\n"), std::invalid_argument);
}

TEST_CASE("instantiation is uniform over the subclass") {
  const auto& t = find_template("boxing books up for storage");
  const auto& cat = Catalog::instance();
  const auto& sub = cat.subclass(cat.subclass_id("paper product"));
  std::map<std::string, int> counts;
  Rng rng(77);
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[instantiate(t, rng).bindings.at(0).second];
  CHECK(counts.size() == sub.categories.size());
  const double p = 1.0 / static_cast<double>(sub.categories.size());
  const double sigma = std::sqrt(n * p * (1 - p));
  for (const auto& [name, c] : counts) CHECK(std::abs(c - n * p) <= 3 * sigma);
}

TEST_CASE("evaluation examples") {
  fixtures::WorldBuilder b;
  const auto floor = b.add("floor");
  const auto table = b.add("table");
  const auto p1 = b.add("package");
  const auto p2 = b.add("package");
  const auto box = b.add("box", Size::small, Color::blue);
  b.put(p1, Relation::on, floor);
  b.put(p2, Relation::on, table);
  b.put(box, Relation::on, floor);
  auto s = b.build(floor);

  const auto all_open = parse_formula("forall x . package(x) -> open(x)");
  CHECK(!evaluate(s, *all_open));
  s.set_flag(p1, Flag::open, true);
  s.set_flag(p2, Flag::open, true);
  CHECK(evaluate(s, *all_open));

  CHECK(evaluate(s, *parse_formula("exists y . box(y) & (forall x . plaything(x) -> in(x, y))")));
  CHECK_THROWS_AS(evaluate(s, *parse_formula("open(x)")), FreeVariableError);
  CHECK_THROWS_AS(evaluate(s, *parse_formula("open(nothing#9)")), UnknownObjectError);
}

TEST_CASE("shared existential block matches pair enumeration") {
  fixtures::WorldBuilder b;
  const auto floor = b.add("floor");
  const auto table = b.add("table");
  const auto j1 = b.add("jar");
  const auto j2 = b.add("jar");
  const auto apple = b.add("apple");
  const auto banana = b.add("banana");
  b.put(j1, Relation::on, table);
  b.put(j2, Relation::on, table);
  const auto& t = find_template("bottling fruit");
  const auto g = ground_with(t, {{"?[fruit]_1", "apple"}, {"?[fruit]_2", "banana"}});
  const ObjectIndex jars[] = {j1, j2};
  for (int a = 0; a < 2; ++a) {
    for (int bb = 0; bb < 2; ++bb) {
      auto bld = b;
      bld.put(apple, Relation::in, jars[a]);
      bld.put(banana, Relation::in, jars[bb]);
      const auto s = bld.build(floor);
      // Enumerate y1, y2 over jars: apple in y1 and banana in y2.
      bool expect = false;
      for (auto y1 : jars) {
        for (auto y2 : jars) expect = expect || (s.at(apple).holder == y1 && s.at(banana).holder == y2);
      }
      CHECK(evaluate(s, g) == expect);
      CHECK(evaluate(s, g) == fol_oracle(s, *g.formula()));
    }
  }
}

TEST_CASE("evaluation agrees with the exhaustive oracle on small universes") {
  Rng rng(2024);
  int trues = 0;
  for (int i = 0; i < 500; ++i) {
    const auto s = random_small_world(rng);
    REQUIRE(s.universe().size() <= 8);
    std::vector<std::string> bound;
    auto f = random_formula(s, rng, bound, 4);
    if (!free_variables(*f).empty()) continue;
    const bool expect = fol_oracle(s, *f);
    trues += expect;
    CHECK(evaluate(s, *f) == expect);
    CHECK(evaluate(s, *parse_formula(to_string(f))) == expect);
  }
  MESSAGE("true formulas: " << trues << " / 500");
  CHECK(trues > 50);
  CHECK(trues < 450);
}

TEST_CASE("compiled goals count satisfied conjuncts") {
  auto k = fixtures::kitchen();
  GroundGoal g;
  g.template_name = "test";
  for (const char* text : {"forall x . apple(x) -> on(x, table#1)", "exists y . box(y) & open(y)",
                           "forall x . banana(x) -> on(x, table#1)"}) {
    GoalBlock blk;
    blk.lines.push_back(parse_formula(text));
    g.blocks.push_back(blk);
  }
  CHECK(satisfied_conjuncts(k.s, g) == 2);
  CHECK(!evaluate(k.s, g));
  const auto cg = CompiledGoal::compile(k.s.universe(), g);
  CHECK(cg.conjunct_roots().size() == 3);
}
