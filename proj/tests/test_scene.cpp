#include <doctest.h>

#include <algorithm>
#include <set>

#include "pragworld/scene.hpp"
#include "pragworld/serialize.hpp"

using namespace pragworld;

namespace {

WorldState scene(std::uint64_t seed) {
  SceneConfig c;
  c.rng_seed = seed;
  return sample_scene(c);
}

bool legal_holder(const Universe& u, ObjectIndex x, ObjectIndex h) {
  const auto& cat = Catalog::instance();
  const auto& sub = cat.subclass(u.category_of(x).subclass);
  const auto hc = u.object(h).category;
  if (u.is_location(h)) return std::find(sub.position_locations.begin(), sub.position_locations.end(), hc) != sub.position_locations.end();
  const auto hs = u.category_of(h).subclass;
  return std::find(sub.position_receptacles.begin(), sub.position_receptacles.end(), hs) != sub.position_receptacles.end();
}

}  // namespace

TEST_CASE("sampled scenes follow the four sampling steps") {
  const auto& cat = Catalog::instance();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = scene(seed);
    const auto& u = s.universe();
    CHECK_NOTHROW(s.validate());
    CHECK(u.locations().size() == 16);
    for (auto c : cat.location_categories()) CHECK(u.instances_of(c).size() == 1);
    for (const auto& sub : cat.subclasses()) {
      if (sub.cls == ObjectClass::location) continue;
      std::size_t n = 0;
      for (auto c : sub.categories) {
        CHECK(u.instances_of(c).size() <= 3);
        n += u.instances_of(c).size();
      }
      CHECK(n >= 1);
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto x = static_cast<ObjectIndex>(i);
      const auto& o = u.object(x);
      ids.insert(o.id);
      const auto& spec = u.category_of(x);
      CHECK((o.size != Size::none) == spec.meta.has(Meta::has_size));
      CHECK((o.color != Color::none) == spec.meta.has(Meta::has_color));
      CHECK(!s.flag(x, Flag::open));
      CHECK(!s.flag(x, Flag::sliced));
      CHECK(!s.flag(x, Flag::soaked));
      CHECK(s.flag(x, Flag::toggled) == (spec.name == "refrigerator"));
      if (u.is_movable(x)) {
        CHECK(legal_holder(u, x, s.at(x).holder));
        const auto where = u.category_of(s.resolved_location(x)).name;
        if (spec.meta.has(Meta::freezable)) CHECK(s.flag(x, Flag::frozen) == (where == "refrigerator"));
        if (spec.meta.has(Meta::cookable)) CHECK(s.flag(x, Flag::cooked) == is_heater_category(where));
      }
    }
    CHECK(ids.size() == u.size());
    CHECK(s.agent_location(Agent::human) == u.location_named("floor"));
    CHECK(s.agent_location(Agent::robot) == u.location_named("floor"));
  }
}

TEST_CASE("scene sampling is reproducible") {
  CHECK(canonical_string(scene(42)) == canonical_string(scene(42)));
  CHECK(canonical_string(scene(42)) != canonical_string(scene(43)));
}

TEST_CASE("stained fraction is one third") {
  std::size_t stainable = 0, stained = 0;
  for (std::uint64_t seed = 0; seed < 700; ++seed) {
    const auto s = scene(1000 + seed);
    const auto& u = s.universe();
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto x = static_cast<ObjectIndex>(i);
      if (!u.has_meta(x, Meta::stainable)) continue;
      ++stainable;
      stained += s.flag(x, Flag::stained);
    }
  }
  REQUIRE(stainable >= 10000);
  CHECK(static_cast<double>(stained) / static_cast<double>(stainable) == doctest::Approx(1.0 / 3.0).epsilon(0.06));
}

TEST_CASE("mean scene size and category count") {
  double objects = 0, cats = 0;
  const int n = 1000;
  for (int seed = 0; seed < n; ++seed) {
    const auto s = scene(static_cast<std::uint64_t>(seed));
    objects += static_cast<double>(s.universe().size());
    std::set<CategoryId> cs;
    for (const auto& o : s.universe().objects()) cs.insert(o.category);
    cats += static_cast<double>(cs.size());
  }
  objects /= n;
  cats /= n;
  MESSAGE("mean objects " << objects << ", mean categories " << cats);
  CHECK(objects == doctest::Approx(230.0).epsilon(30.0 / 230.0));
  CHECK(cats == doctest::Approx(110.0).epsilon(15.0 / 110.0));
}

TEST_CASE("scene config validation and ids") {
  SceneConfig bad;
  bad.stained_dusty_probability = 1.5;
  CHECK_THROWS(validate(bad));
  bad = {};
  bad.max_instances_per_category = 0;
  CHECK_THROWS(validate(bad));
  CHECK(make_object_id("carving knife", 2) == "carving_knife#2");
}
