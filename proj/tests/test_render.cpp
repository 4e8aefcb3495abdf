#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "pragworld/embedded_data.hpp"
#include "pragworld/env.hpp"
#include "pragworld/render.hpp"

using namespace pragworld;

namespace {

CategoryId cid(const char* name) { return Catalog::instance().category_id(name); }

LiftedSubgoal large_red_box_to_sofa() {
  const auto& c = Catalog::instance();
  LiftedSubgoal m;
  m.type = QuestType::move_to;
  m.tier = Tier::subclass;
  m.tier_id = c.category(cid("box")).subclass;
  m.attrs = {Attr{AttrKind::size, static_cast<std::uint8_t>(Size::large), true},
             Attr{AttrKind::color, static_cast<std::uint8_t>(Color::red), true}};
  m.target = cid("sofa");
  return m;
}

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("instructions") {
  LiftedSubgoal that;
  CHECK(render_instruction(that, 0) == "Bring me that.");
  CHECK(describe_specifiers(that).empty());

  const auto box = large_red_box_to_sofa();
  CHECK(render_instruction(box, 1) == "Move the large red box to the sofa.");
  CHECK(describe_specifiers(box) == "the large red box");

  LiftedSubgoal sliced;
  sliced.attrs = {Attr{AttrKind::flag, static_cast<std::uint8_t>(Flag::sliced), true}};
  CHECK(describe_specifiers(sliced) == "the sliced one");
  CHECK(render_instruction(sliced, 0) == "Bring me the sliced one.");

  LiftedSubgoal heat;
  heat.type = QuestType::change_state;
  heat.verb = Verb::heat;
  heat.tier = Tier::category;
  heat.tier_id = cid("apple");
  heat.source = SourceSpec{Relation::on, cid("table")};
  CHECK(render_instruction(heat, 0) == "Heat up the apple on the table.");

  Rng rng(1);
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) {
    const auto s = render_utterance(box, rng);
    seen.insert(s);
    CHECK((s.back() == '.' || s.back() == '?'));
    CHECK(contains(s, "large red box"));
  }
  CHECK(seen.count("Can you put the large red box to the sofa?") == 1);
  CHECK(seen.size() >= 3);
}

TEST_CASE("effects and observations") {
  auto k = fixtures::kitchen();
  auto s = k.s;
  s.set_agent_location(Agent::robot, k.refrigerator);
  CHECK(render_effect(s, make_action(Schema::open_loc, Agent::robot, {k.refrigerator})) == "You open the refrigerator#1.");
  CHECK(render_effect(k.s, make_action(Schema::move, Agent::robot, {k.floor, k.table})) ==
        "You move from floor#1 to table#1.");
  CHECK(render_inventory(k.s, "").rfind("You are holding nothing.", 0) == 0);
  CHECK(contains(render_welcome(k.s), "Now you are standing on the floor#1."));

  // Partial view: only the robot's location, closed insides hidden.
  const auto full = render_examine(s, Observability::full);
  const auto part = render_examine(s, Observability::partial);
  CHECK(contains(full, "apple#1"));
  CHECK(!contains(part, "apple#1"));
  CHECK(!contains(part, "banana#1"));
  const auto opened = apply(s, make_action(Schema::open_loc, Agent::robot, {k.refrigerator}));
  CHECK(contains(render_examine(opened, Observability::partial), "banana#1"));

  // Partial trajectories name objects by category.
  auto hs = k.s;
  hs.set_agent_location(Agent::human, k.table);
  const auto pick = make_action(Schema::pick_up_at_loc, Agent::human, {k.apple1, k.table});
  CHECK(render_human_action(hs, pick, Observability::full) == "Human picks up the apple#1 at the table#1.");
  CHECK(render_human_action(hs, pick, Observability::partial) == "Human picks up the apple at the table#1.");
}

TEST_CASE("commands parse back to their actions") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SceneConfig c;
    c.rng_seed = seed;
    auto s = sample_scene(c);
    Rng rng(seed);
    for (int step = 0; step < 40; ++step) {
      const auto acts = valid_actions(s, Agent::robot);
      for (const auto& a : acts) {
        const auto text = render_command(s.universe(), a);
        const auto p = parse_command(s, text);
        REQUIRE_MESSAGE(p.kind == ParsedCommand::Kind::action, text);
        CHECK_MESSAGE(p.action == a, text);
        // case and spacing do not matter
        std::string shout = "  " + text + " ";
        std::transform(shout.begin(), shout.end(), shout.begin(), [](unsigned char ch) { return std::toupper(ch); });
        CHECK(parse_command(s, shout).action == a);
      }
      s = apply(s, rng.pick(acts));
    }
  }
  auto k = fixtures::kitchen();
  CHECK(parse_command(k.s, "dance wildly").kind == ParsedCommand::Kind::cant_understand);
  CHECK(parse_command(k.s, "").kind == ParsedCommand::Kind::cant_understand);
  CHECK(parse_command(k.s, "pick up banana#1 from refrigerator#1").kind != ParsedCommand::Kind::action);
  CHECK(parse_command(k.s, "pick up unicorn#1").kind != ParsedCommand::Kind::action);
  CHECK(parse_command(k.s, "move to floor#1").kind == ParsedCommand::Kind::cant_do);
}

TEST_CASE("token counts and words") {
  CHECK(count_tokens("a  b\nc ") == 3);
  CHECK(count_tokens("") == 0);
  CHECK(lexical_words("You open the refrigerator#1. Hi, box!") ==
        std::vector<std::string>{"you", "open", "the", "hi", "box"});
}

TEST_CASE("vocabulary matches the shipped lexicon") {
  std::istringstream in{std::string(embedded::kLexicon)};
  std::vector<std::string> lex;
  for (std::string w; in >> w;) lex.push_back(w);
  const auto voc = vocabulary();
  CHECK(std::is_sorted(voc.begin(), voc.end()));
  CHECK(voc == lex);

  // Everything the renderer emits stays inside the vocabulary.
  const std::set<std::string> known(voc.begin(), voc.end());
  auto k = fixtures::kitchen();
  std::vector<std::string> texts = {render_welcome(k.s), render_examine(k.s, Observability::full),
                                    render_inventory(k.s, "Bring me that."),
                                    render_instruction(large_red_box_to_sofa(), 0)};
  for (const auto& a : valid_actions(k.s, Agent::robot)) texts.push_back(render_effect(k.s, a));
  Rng rng(4);
  for (int i = 0; i < 20; ++i) texts.push_back(render_utterance(large_red_box_to_sofa(), rng));
  for (const auto& t : texts) {
    for (const auto& w : lexical_words(t)) CHECK_MESSAGE(known.count(w) == 1, w);
  }
}
