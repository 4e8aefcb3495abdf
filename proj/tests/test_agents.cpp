#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pragworld/agents.hpp"
#include "pragworld/serialize.hpp"

using namespace pragworld;

namespace {

// The robot stands at a switched-off appliance and is asked to switch it on: exactly one
// robot action succeeds.
EpisodeSpec one_action_episode() {
  const auto& cat = Catalog::instance();
  std::string appliance;
  for (auto c : cat.location_categories()) {
    const auto& spec = cat.category(c);
    if (spec.meta.has(Meta::toggleable) && spec.name != "refrigerator") {
      appliance = spec.name;
      break;
    }
  }
  REQUIRE(!appliance.empty());
  fixtures::WorldBuilder b;
  b.add("floor");
  const auto where = b.add(appliance);
  const auto apple = b.add("apple");
  b.put(apple, Relation::on, b.add("table"));
  EpisodeSpec e;
  e.seed = 1;
  e.scene = b.build(where);
  e.s_T_digest = state_digest(e.scene);
  e.subgoal.type = QuestType::change_state;
  e.subgoal.verb = Verb::toggle_on;
  e.subgoal.tier = Tier::category;
  e.subgoal.tier_id = cat.category_id(appliance);
  e.utterance = e.subgoal;
  Rng rng(1);
  e.utterance_text = render_utterance(e.utterance, rng);
  e.hardness = 1;
  e.expert_demo = {make_action(Schema::toggle_on_loc, Agent::robot, {where})};
  e.plan_length = 1;
  return e;
}

}  // namespace

TEST_CASE("random agent on a one-action quest succeeds first with probability 1/|actions|") {
  const auto e = one_action_episode();
  std::size_t n_valid = 0;
  for (const auto& a : valid_actions(e.scene, Agent::robot)) n_valid += !is_meta_schema(a.schema);
  REQUIRE(n_valid >= 2);
  const int runs = 4000;
  int first = 0;
  for (int i = 0; i < runs; ++i) {
    const auto o = run_episode(e, AgentKind::random, Observability::full, static_cast<std::uint64_t>(i));
    if (o.success && o.moves == 1) ++first;
    if (o.success) CHECK(o.score == doctest::Approx(kSuccessReward - o.moves));
    else CHECK(o.score == -static_cast<double>(o.moves));
  }
  const double p = 1.0 / static_cast<double>(n_valid);
  const double sigma = std::sqrt(p * (1 - p) / runs);
  MESSAGE("first-move success " << first / static_cast<double>(runs) << " vs " << p);
  CHECK(std::abs(first / static_cast<double>(runs) - p) <= 3 * sigma);

  // The heuristic takes the single action.
  const auto h = run_episode(e, AgentKind::heuristic, Observability::full, 0);
  CHECK(h.success);
  CHECK(h.moves == 1);
  CHECK(h.score == 99.0);
  CHECK_THROWS_AS(run_episode(e, AgentKind::heuristic, Observability::partial, 0), std::invalid_argument);
}

TEST_CASE("random play replays from its seed") {
  const auto e = one_action_episode();
  Session a(e, Observability::full), b(e, Observability::full);
  a.reset();
  b.reset();
  RandomAgent ra(42), rb(42);
  while (!a.done()) {
    const auto ca = ra.act(a), cb = rb.act(b);
    CHECK(ca == cb);
    CHECK(ca != "examine");
    CHECK(ca != "inventory");
    a.step(ca);
    b.step(cb);
  }
  CHECK(a.score() == b.score());
}

TEST_CASE("parallel evaluation equals serial") {
  DatasetOptions o;
  o.n = 8;
  o.seed = 21;
  const auto eps = generate_dataset_parallel(o, 0);
  for (auto kind : {AgentKind::random, AgentKind::heuristic}) {
    const auto s = run_all_serial(kind, eps, Observability::full, 5);
    const auto p = run_all_parallel(kind, eps, Observability::full, 5, 4);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].score == p[i].score);
      CHECK(s[i].success == p[i].success);
      CHECK(s[i].moves == p[i].moves);
      CHECK(s[i].level == eps[i].hardness);
    }
  }
  const auto r = run_all_serial(AgentKind::random, eps, Observability::partial, 5);
  CHECK(r.size() == eps.size());
}

TEST_CASE("report tables") {
  const std::vector<EpisodeOutcome> outcomes = {
      {1, 96.0, true, 4}, {1, -40.0, false, 40}, {2, 90.0, true, 10}, {2, 94.0, true, 6}};
  const auto st = summarize(outcomes);
  CHECK(st.episodes == 4);
  CHECK(st.avg_score == doctest::Approx(60.0));
  CHECK(st.success_rate == doctest::Approx(75.0));
  REQUIRE(st.avg_moves);
  CHECK(*st.avg_moves == doctest::Approx(20.0 / 3.0));
  CHECK(!summarize({{3, -40.0, false, 40}}).avg_moves);

  const auto r = make_report(AgentKind::heuristic, Observability::full, outcomes);
  CHECK(r.table() ==
        "Model (full) | Level 1 | Level 2 | All\n"
        "heuristic | 28.0 (50.0%, 4.0) | 92.0 (100.0%, 8.0) | 60.0 (75.0%, 6.7)\n");
  const auto j = r.to_json();
  CHECK(j["agent"] == "heuristic");
  CHECK(j["levels"]["2"]["success_rate"].get<double>() == doctest::Approx(100.0));
  CHECK(parse_agent_kind("random") == AgentKind::random);
  CHECK_THROWS(parse_agent_kind("oracle"));
}
