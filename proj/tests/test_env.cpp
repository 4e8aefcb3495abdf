#include <doctest.h>

#include <filesystem>
#include <regex>
#include <set>

#include "pragworld/env.hpp"
#include "pragworld/episode.hpp"

using namespace pragworld;

namespace {

const std::vector<EpisodeSpec>& episodes() {
  static const auto eps = [] {
    std::vector<EpisodeSpec> out;
    for (int level = 1; level <= 4; ++level) {
      GenerationOptions o;
      o.target_level = level;
      out.push_back(generate_episode(500 + static_cast<std::uint64_t>(level), o));
    }
    return out;
  }();
  return eps;
}

}  // namespace

TEST_CASE("the expert demo scores 100 minus its length") {
  for (const auto& e : episodes()) {
    for (auto mode : {Observability::full, Observability::partial}) {
      Session s(e, mode);
      s.reset();
      REQUIRE(!s.done());
      const auto& u = s.state().universe();
      StepResult last;
      for (const auto& a : e.expert_demo) {
        REQUIRE(!s.done());
        last = s.step(render_command(u, a));
        CHECK(last.info != "invalid");
      }
      CHECK(s.done());
      CHECK(s.success());
      CHECK(last.info == "success");
      CHECK(s.score() == doctest::Approx(kSuccessReward - static_cast<double>(e.expert_demo.size())));
      CHECK(check_success(s.state(), e.subgoal, s.quest_state()));
      CHECK_THROWS_AS(s.step("examine"), std::logic_error);
    }
  }
}

TEST_CASE("failing play ends at the step limit with score -40") {
  const auto& e = episodes().front();
  Session s(e, Observability::full);
  s.reset();
  StepResult r;
  for (int i = 0; i < kMaxSteps; ++i) {
    REQUIRE(!s.done());
    r = s.step(i % 2 ? "dance" : "pick up unicorn#1");
    CHECK(r.score_delta == -1.0);
    CHECK((r.observation == kCantUnderstand || r.observation == kCantDo));
  }
  CHECK(s.done());
  CHECK(!s.success());
  CHECK(r.info == "step_limit");
  CHECK(s.score() == -40.0);
  CHECK(s.steps_taken() == 40);
}

TEST_CASE("examine and inventory are free but count as steps") {
  const auto& e = episodes()[1];
  Session s(e, Observability::full);
  const auto first = s.reset();
  auto r = s.step("examine");
  CHECK(r.score_delta == 0.0);
  CHECK(r.info == "action");
  r = s.step("inventory");
  CHECK(r.score_delta == 0.0);
  CHECK(r.observation.find(e.utterance_text) != std::string::npos);
  CHECK(s.steps_taken() == 2);
  CHECK(s.score() == 0.0);
  r = s.step("jump");
  CHECK(r.observation == kCantUnderstand);
  CHECK(s.score() == -1.0);
  // reset is repeatable
  CHECK(s.reset() == first);
  CHECK(s.score() == 0.0);
  CHECK(s.steps_taken() == 0);
  CHECK(s.state() == s.quest_state());
}

TEST_CASE("valid commands all apply") {
  const auto& e = episodes()[2];
  Session s(e, Observability::full);
  s.reset();
  for (const auto& c : s.valid_commands()) {
    const auto p = parse_command(s.state(), c);
    CHECK(p.kind == ParsedCommand::Kind::action);
  }
}

TEST_CASE("partial observations only name what the robot can see") {
  for (const auto& e : episodes()) {
    Session s(e, Observability::partial);
    const auto obs = s.reset();
    const auto& st = s.quest_state();
    const auto& u = st.universe();
    const auto here = st.agent_location(Agent::robot);
    const std::regex id_re(R"([A-Za-z0-9_\-]+#[0-9]+)");
    std::set<std::string> ids;
    for (auto it = std::sregex_iterator(obs.begin(), obs.end(), id_re); it != std::sregex_iterator(); ++it) {
      ids.insert(it->str());
    }
    for (const auto& id : ids) {
      const auto x = u.find(id);
      REQUIRE_MESSAGE(x, id);
      const bool visible = u.is_location(*x) || st.accessible_at(*x, here);
      CHECK_MESSAGE(visible, id);
    }
    // The full view shows strictly more.
    Session f(e, Observability::full);
    CHECK(f.reset().size() > obs.size());
  }
}

TEST_CASE("sessions load from disk") {
  const auto dir = std::filesystem::temp_directory_path() / "pragworld_env_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "episode.json").string();
  save_episode(path, episodes()[0]);
  auto a = Session::open(path, Observability::full);
  Session b(episodes()[0], Observability::full);
  CHECK(a.reset() == b.reset());
  CHECK(a.success_set() == b.success_set());
  std::filesystem::remove_all(dir);
}
