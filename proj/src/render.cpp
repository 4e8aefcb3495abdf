#include "pragworld/render.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace pragworld {

namespace {

constexpr std::array<std::string_view, 3> kBringVerbs = {"Bring", "Hand", "Give"};
constexpr std::array<std::string_view, 2> kPutVerbs = {"Put", "Move"};

struct VerbWords {
  std::string_view verb, prep;
};

VerbWords verb_words(Verb v) {
  switch (v) {
    case Verb::open: return {"Open", ""};
    case Verb::close: return {"Close", ""};
    case Verb::toggle_on: return {"Turn", "on"};
    case Verb::toggle_off: return {"Turn", "off"};
    case Verb::heat: return {"Heat", "up"};
    case Verb::cool: return {"Cool", "down"};
    case Verb::soak: return {"Soak", ""};
    case Verb::slice: return {"Slice", "up"};
    case Verb::clean: return {"Clean", "up"};
    case Verb::none: break;
  }
  throw std::invalid_argument("change-state utterance without a verb");
}

// Fixed wording used by the templates below; feeds the vocabulary.
constexpr std::string_view kFixedText[] = {
    "Bring Hand Give me that the one Put Move it over there to",
    "Open Close Turn on off Heat up Cool down Soak Slice Clean Please Can you",
    "Welcome to the world! In the room there is a an Now you are standing on",
    "The human agent has taken a list of actions towards a goal, which includes:",
    "Human moves picks puts into onto opens closes toggles heats cools makes soaked slices cleans at from with",
    "Human stops and says Now it is your turn to help human to achieve the goal!",
    "You are at see In On can holding nothing Recall your task",
    "You move pick put take give open close toggle heat cool make slice clean",
    "You can't do that. I can't understand.",
};

std::string lower_first(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

const std::string& category_name(CategoryId c) { return Catalog::instance().category(c).name; }

// "[state] [category] [id]" as in examine listings.
std::string object_phrase(const WorldState& s, ObjectIndex x) {
  const auto& u = s.universe();
  const auto& obj = u.object(x);
  std::vector<std::string> w;
  if (obj.size != Size::none) w.emplace_back(size_name(obj.size));
  if (obj.color != Color::none) w.emplace_back(color_name(obj.color));
  if (u.has_meta(x, Meta::openable)) w.emplace_back(flag_adjective(Flag::open, s.flag(x, Flag::open)));
  if (u.has_meta(x, Meta::toggleable)) w.emplace_back(flag_adjective(Flag::toggled, s.flag(x, Flag::toggled)));
  for (Flag f : {Flag::cooked, Flag::frozen, Flag::dusty, Flag::stained, Flag::sliced, Flag::soaked}) {
    if (u.has_meta(x, flag_meta(f)) && s.flag(x, f)) w.emplace_back(flag_adjective(f, true));
  }
  w.push_back(u.category_of(x).name);
  w.push_back(obj.id);
  return join(w, " ");
}

std::string article_for(std::string_view word) {
  const char c = word.empty() ? 'x' : static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  return std::string(std::string_view("aeiou").find(c) != std::string_view::npos ? "an" : "a");
}

}  // namespace

std::string_view observability_name(Observability o) { return o == Observability::full ? "full" : "partial"; }

Observability parse_observability(std::string_view s) {
  if (s == "full") return Observability::full;
  if (s == "partial") return Observability::partial;
  throw std::invalid_argument("unknown observability mode: " + std::string(s));
}

std::string_view flag_adjective(Flag f, bool value) {
  switch (f) {
    case Flag::open: return value ? "open" : "closed";
    case Flag::cooked: return value ? "cooked" : "uncooked";
    case Flag::frozen: return value ? "frozen" : "unfrozen";
    case Flag::dusty: return value ? "dusty" : "dustless";
    case Flag::stained: return value ? "stained" : "unstained";
    case Flag::sliced: return value ? "sliced" : "unsliced";
    case Flag::soaked: return value ? "soaked" : "dry";
    case Flag::toggled: return value ? "switched-on" : "switched-off";
  }
  return "";
}

std::string describe_specifiers(const LiftedSubgoal& u) {
  const auto& cat = Catalog::instance();
  std::vector<std::string> w;
  for (const auto& a : u.attrs) {
    if (a.kind == AttrKind::size) w.emplace_back(size_name(static_cast<Size>(a.code)));
    if (a.kind == AttrKind::color) w.emplace_back(color_name(static_cast<Color>(a.code)));
  }
  for (const auto& a : u.attrs) {
    if (a.kind == AttrKind::flag) w.emplace_back(flag_adjective(static_cast<Flag>(a.code), a.value));
  }
  switch (u.tier) {
    case Tier::none:
      if (w.empty() && !u.source) return "";
      w.emplace_back("one");
      break;
    case Tier::cls: w.emplace_back(class_name(static_cast<ObjectClass>(u.tier_id))); break;
    case Tier::subclass: w.push_back(cat.subclass(u.tier_id).name); break;
    case Tier::category: w.push_back(cat.category(u.tier_id).name); break;
  }
  std::string out = "the " + join(w, " ");
  if (u.source) {
    out += u.source->rel == Relation::in ? " in the " : " on the ";
    out += cat.category(u.source->holder).name;
  }
  return out;
}

std::string render_instruction(const LiftedSubgoal& u, int variant) {
  validate(u);
  const auto desc = describe_specifiers(u);
  const auto v = static_cast<std::size_t>(variant < 0 ? 0 : variant);
  std::string out;
  switch (u.type) {
    case QuestType::bring_me:
      out = std::string(kBringVerbs[v % kBringVerbs.size()]) + " me " + (desc.empty() ? "that" : desc) + ".";
      break;
    case QuestType::move_to: {
      const std::string obj = desc.empty() ? "it" : desc;
      if (!u.target) {
        out = "Put " + obj + " over there.";
      } else {
        out = std::string(kPutVerbs[v % kPutVerbs.size()]) + " " + obj + " to the " + category_name(*u.target) + ".";
      }
      break;
    }
    case QuestType::change_state: {
      const auto [verb, prep] = verb_words(u.verb);
      out = std::string(verb);
      if (desc.empty()) {
        out += " it";
        if (!prep.empty()) out += " " + std::string(prep);
      } else {
        if (!prep.empty()) out += " " + std::string(prep);
        out += " " + desc;
      }
      out += ".";
      break;
    }
  }
  return out;
}

std::string render_utterance(const LiftedSubgoal& u, Rng& rng) {
  const auto variant = static_cast<int>(rng.below(6));
  auto text = render_instruction(u, variant);
  switch (rng.below(3)) {
    case 0: return "Please " + lower_first(text);
    case 1:
      text.back() = '?';
      return "Can you " + lower_first(text);
    default: return text;
  }
}

std::string render_welcome(const WorldState& s) {
  const auto& u = s.universe();
  std::vector<std::string> locs;
  for (auto l : u.locations()) locs.push_back(article_for(u.object(l).id) + " " + u.object(l).id);
  std::string out = "Welcome to the world!\nIn the room there is " + join(locs, ", ") + ".\n";
  out += "Now you are standing on the " + u.object(s.agent_location(Agent::robot)).id + ".";
  return out;
}

std::string render_human_action(const WorldState& before, const GroundedAction& a, Observability mode) {
  const auto& u = before.universe();
  auto ref = [&](int i) -> std::string {
    const auto x = a.args[static_cast<std::size_t>(i)];
    if (mode == Observability::full || u.is_location(x)) return u.object(x).id;
    return u.category_of(x).name;
  };
  switch (a.schema) {
    case Schema::move: return "Human moves to the " + ref(1) + ".";
    case Schema::pick_up_at_loc: return "Human picks up the " + ref(0) + " at the " + ref(1) + ".";
    case Schema::pick_up_from_rec_at_loc:
      return "Human picks up the " + ref(0) + " from the " + ref(1) + " at the " + ref(2) + ".";
    case Schema::put_inside_loc: return "Human puts the " + ref(0) + " into the " + ref(1) + ".";
    case Schema::put_ontop_loc: return "Human puts the " + ref(0) + " onto the " + ref(1) + ".";
    case Schema::put_inside_rec_at_loc:
      return "Human puts the " + ref(0) + " into the " + ref(1) + " at the " + ref(2) + ".";
    case Schema::put_ontop_rec_at_loc:
      return "Human puts the " + ref(0) + " onto the " + ref(1) + " at the " + ref(2) + ".";
    case Schema::open_loc: return "Human opens the " + ref(0) + ".";
    case Schema::close_loc: return "Human closes the " + ref(0) + ".";
    case Schema::open_rec_at_loc: return "Human opens the " + ref(0) + " at the " + ref(1) + ".";
    case Schema::close_rec_at_loc: return "Human closes the " + ref(0) + " at the " + ref(1) + ".";
    case Schema::toggle_on_loc: return "Human toggles the " + ref(0) + " on.";
    case Schema::toggle_off_loc: return "Human toggles the " + ref(0) + " off.";
    case Schema::toggle_on_obj_at_loc: return "Human toggles the " + ref(0) + " on at the " + ref(1) + ".";
    case Schema::toggle_off_obj_at_loc: return "Human toggles the " + ref(0) + " off at the " + ref(1) + ".";
    case Schema::heat_obj: return "Human heats the " + ref(0) + " up with the " + ref(1) + ".";
    case Schema::cool_obj: return "Human cools the " + ref(0) + " down with the " + ref(1) + ".";
    case Schema::soak_obj: return "Human makes the " + ref(0) + " soaked with the " + ref(1) + ".";
    case Schema::slice_obj: return "Human slices up the " + ref(0) + " with the " + ref(1) + ".";
    case Schema::clean_obj_at_loc: return "Human cleans up the " + ref(0) + " with the " + ref(1) + ".";
    case Schema::clean_loc: return "Human cleans up the " + ref(1) + " with the " + ref(0) + ".";
    case Schema::bring_to_human:
    case Schema::take_from_human:
    case Schema::examine:
    case Schema::inventory: break;
  }
  throw std::invalid_argument("not a human action: " + std::string(schema_name(a.schema)));
}

std::string render_trajectory(const WorldState& s0, const std::vector<GroundedAction>& omega, Observability mode) {
  std::string out = "The human agent has taken a list of actions towards a goal, which includes:";
  WorldState s = s0;
  for (const auto& a : omega) {
    out += "\n" + render_human_action(s, a, mode);
    s = apply(s, a);
  }
  return out;
}

std::string render_utterance_block(std::string_view instruction) {
  return "Human stops and says, \"" + std::string(instruction) + "\"\nNow it is your turn to help human to achieve the goal!";
}

std::string render_examine(const WorldState& s, Observability mode) {
  const auto& u = s.universe();
  const bool partial = mode == Observability::partial;
  std::vector<std::vector<ObjectIndex>> kids(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto h = s.at(static_cast<ObjectIndex>(i)).holder;
    if (h >= 0) kids[static_cast<std::size_t>(h)].push_back(static_cast<ObjectIndex>(i));
  }
  auto listing = [&](ObjectIndex holder, Relation rel, std::string& out) {
    std::vector<std::string> items;
    for (auto k : kids[static_cast<std::size_t>(holder)]) {
      if (s.at(k).relation == rel) items.push_back(object_phrase(s, k));
    }
    if (items.empty()) return;
    out += std::string("\n") + (rel == Relation::in ? "In" : "On") + " the " + u.object(holder).id + " you can see " +
           join(items, ", ") + ".";
  };
  const auto here = s.agent_location(Agent::robot);
  std::string out = "You are at the " + u.object(here).id + ".";
  for (auto loc : u.locations()) {
    if (partial && loc != here) continue;
    out += "\nYou see the " + object_phrase(s, loc) + ".";
    for (Relation rel : {Relation::in, Relation::on}) {
      if (partial && rel == Relation::in && s.closed_container(loc)) continue;
      listing(loc, rel, out);
    }
    for (auto r : kids[static_cast<std::size_t>(loc)]) {
      if (!u.is_receptacle(r)) continue;
      if (partial && !s.accessible_at(r, loc)) continue;
      for (Relation rel : {Relation::in, Relation::on}) {
        if (partial && rel == Relation::in && s.closed_container(r)) continue;
        listing(r, rel, out);
      }
    }
  }
  return out;
}

std::string render_inventory(const WorldState& s, std::string_view recall) {
  const auto held = s.holding(Agent::robot);
  std::string out = held == kNone ? std::string("You are holding nothing.") : "You are holding " + object_phrase(s, held) + ".";
  out += "\nRecall your task:\n";
  out += recall;
  return out;
}

std::string render_effect(const WorldState& before, const GroundedAction& a) {
  const auto& u = before.universe();
  auto id = [&](int i) { return u.object(a.args[static_cast<std::size_t>(i)]).id; };
  switch (a.schema) {
    case Schema::move: return "You move from " + id(0) + " to " + id(1) + ".";
    case Schema::pick_up_at_loc: return "You pick up the " + id(0) + " from " + id(1) + ".";
    case Schema::pick_up_from_rec_at_loc: return "You pick up the " + id(0) + " from the " + id(1) + " at the " + id(2) + ".";
    case Schema::put_inside_loc: return "You put the " + id(0) + " into the " + id(1) + ".";
    case Schema::put_ontop_loc: return "You put the " + id(0) + " onto the " + id(1) + ".";
    case Schema::put_inside_rec_at_loc: return "You put the " + id(0) + " into the " + id(1) + " at the " + id(2) + ".";
    case Schema::put_ontop_rec_at_loc: return "You put the " + id(0) + " onto the " + id(1) + " at the " + id(2) + ".";
    case Schema::open_loc:
    case Schema::open_rec_at_loc: return "You open the " + id(0) + ".";
    case Schema::close_loc:
    case Schema::close_rec_at_loc: return "You close the " + id(0) + ".";
    case Schema::toggle_on_loc:
    case Schema::toggle_on_obj_at_loc: return "You toggle the " + id(0) + " on.";
    case Schema::toggle_off_loc:
    case Schema::toggle_off_obj_at_loc: return "You toggle the " + id(0) + " off.";
    case Schema::heat_obj: return "You heat the " + id(0) + " up with the " + id(1) + ".";
    case Schema::cool_obj: return "You cool the " + id(0) + " down with the " + id(1) + ".";
    case Schema::soak_obj: return "You make the " + id(0) + " soaked with the " + id(1) + ".";
    case Schema::slice_obj: return "You slice up the " + id(0) + " with the " + id(1) + ".";
    case Schema::clean_obj_at_loc: return "You clean up the " + id(0) + " with the " + id(1) + ".";
    case Schema::clean_loc: return "You clean up the " + id(1) + " with the " + id(0) + ".";
    case Schema::bring_to_human: return "You give the " + id(0) + " to human.";
    case Schema::take_from_human: return "You take the " + id(0) + " from human.";
    case Schema::examine: return render_examine(before, Observability::full);
    case Schema::inventory: return render_inventory(before, "");
  }
  return std::string(kCantDo);
}

std::string render_command(const Universe& u, const GroundedAction& a) {
  auto id = [&](int i) { return u.object(a.args[static_cast<std::size_t>(i)]).id; };
  switch (a.schema) {
    case Schema::move: return "move to " + id(1);
    case Schema::pick_up_at_loc: return "pick up " + id(0);
    case Schema::pick_up_from_rec_at_loc: return "pick up " + id(0) + " from " + id(1);
    case Schema::put_inside_loc:
    case Schema::put_inside_rec_at_loc: return "put " + id(0) + " into " + id(1);
    case Schema::put_ontop_loc:
    case Schema::put_ontop_rec_at_loc: return "put " + id(0) + " onto " + id(1);
    case Schema::open_loc:
    case Schema::open_rec_at_loc: return "open " + id(0);
    case Schema::close_loc:
    case Schema::close_rec_at_loc: return "close " + id(0);
    case Schema::toggle_on_loc:
    case Schema::toggle_on_obj_at_loc: return "toggle on " + id(0);
    case Schema::toggle_off_loc:
    case Schema::toggle_off_obj_at_loc: return "toggle off " + id(0);
    case Schema::heat_obj: return "heat " + id(0);
    case Schema::cool_obj: return "cool " + id(0);
    case Schema::soak_obj: return "soak " + id(0);
    case Schema::slice_obj: return "slice " + id(0) + " with " + id(1);
    case Schema::clean_obj_at_loc: return "clean " + id(0) + " with " + id(1);
    case Schema::clean_loc: return "clean " + id(1) + " with " + id(0);
    case Schema::bring_to_human: return "give " + id(0) + " to human";
    case Schema::take_from_human: return "take " + id(0) + " from human";
    case Schema::examine: return "examine";
    case Schema::inventory: return "inventory";
  }
  return "";
}

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in) ++n;
    in = !space;
  }
  return n;
}

std::vector<std::string> lexical_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    if (tok.find('#') != std::string::npos) continue;
    std::string w;
    for (char c : tok) {
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-') {
        w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
    }
    while (!w.empty() && (w.back() == '-' || w.back() == '\'')) w.pop_back();
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::string> vocabulary() {
  std::set<std::string> words;
  auto add = [&](std::string_view text) {
    for (auto& w : lexical_words(text)) words.insert(std::move(w));
  };
  for (auto t : kFixedText) add(t);
  const auto& cat = Catalog::instance();
  for (const auto& c : cat.categories()) add(c.name);
  for (const auto& sc : cat.subclasses()) add(sc.name);
  for (auto c : {ObjectClass::location, ObjectClass::receptacle, ObjectClass::food, ObjectClass::tool, ObjectClass::thing}) {
    add(class_name(c));
  }
  for (int f = 0; f < kFlagCount; ++f) {
    add(flag_adjective(static_cast<Flag>(f), true));
    add(flag_adjective(static_cast<Flag>(f), false));
  }
  for (auto s : {Size::large, Size::small}) add(size_name(s));
  for (auto c : {Color::red, Color::green, Color::blue}) add(color_name(c));
  return {words.begin(), words.end()};
}

}  // namespace pragworld
