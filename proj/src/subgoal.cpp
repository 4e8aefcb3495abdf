#include "pragworld/subgoal.hpp"

#include <algorithm>
#include <stdexcept>

#include "pragworld/catalog.hpp"

namespace pragworld {

namespace {

constexpr std::string_view kTypeNames[] = {"bring-me", "move-to", "change-state"};
constexpr std::string_view kVerbNames[] = {"none", "open", "close", "toggle-on", "toggle-off", "heat",
                                           "cool", "soak", "slice", "clean"};
constexpr std::string_view kTierNames[] = {"none", "class", "subclass", "category"};

// Flag literals a verb establishes; clean needs both dusty and stained false.
std::vector<std::pair<Flag, bool>> verb_effects(Verb v) {
  switch (v) {
    case Verb::open: return {{Flag::open, true}};
    case Verb::close: return {{Flag::open, false}};
    case Verb::toggle_on: return {{Flag::toggled, true}};
    case Verb::toggle_off: return {{Flag::toggled, false}};
    case Verb::heat: return {{Flag::cooked, true}};
    case Verb::cool: return {{Flag::frozen, true}};
    case Verb::soak: return {{Flag::soaked, true}};
    case Verb::slice: return {{Flag::sliced, true}};
    case Verb::clean: return {{Flag::dusty, false}, {Flag::stained, false}};
    case Verb::none: break;
  }
  return {};
}

std::string tier_value_name(Tier t, std::uint16_t id) {
  const auto& cat = Catalog::instance();
  switch (t) {
    case Tier::cls: return std::string(class_name(static_cast<ObjectClass>(id)));
    case Tier::subclass: return cat.subclass(id).name;
    case Tier::category: return cat.category(id).name;
    case Tier::none: break;
  }
  return {};
}

std::string attr_text(const Attr& a) {
  switch (a.kind) {
    case AttrKind::size: return "size=" + std::string(size_name(static_cast<Size>(a.code)));
    case AttrKind::color: return "color=" + std::string(color_name(static_cast<Color>(a.code)));
    case AttrKind::flag:
      return std::string(flag_name(static_cast<Flag>(a.code))) + "=" + (a.value ? "true" : "false");
  }
  return {};
}

Attr parse_attr(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("bad attribute: " + s);
  const auto key = s.substr(0, eq), val = s.substr(eq + 1);
  if (key == "size") {
    auto v = parse_size(val);
    if (!v || *v == Size::none) throw std::invalid_argument("bad size: " + val);
    return Attr{AttrKind::size, static_cast<std::uint8_t>(*v), true};
  }
  if (key == "color") {
    auto v = parse_color(val);
    if (!v || *v == Color::none) throw std::invalid_argument("bad color: " + val);
    return Attr{AttrKind::color, static_cast<std::uint8_t>(*v), true};
  }
  auto f = parse_flag(key);
  if (!f || (val != "true" && val != "false")) throw std::invalid_argument("bad attribute: " + s);
  return Attr{AttrKind::flag, static_cast<std::uint8_t>(*f), val == "true"};
}

}  // namespace

std::string_view quest_type_name(QuestType t) { return kTypeNames[static_cast<int>(t)]; }

QuestType parse_quest_type(std::string_view s) {
  for (int i = 0; i < 3; ++i) {
    if (kTypeNames[i] == s) return static_cast<QuestType>(i);
  }
  throw std::invalid_argument("unknown quest type: " + std::string(s));
}

std::string_view verb_name(Verb v) { return kVerbNames[static_cast<int>(v)]; }

Verb parse_verb(std::string_view s) {
  for (int i = 0; i < 10; ++i) {
    if (kVerbNames[i] == s) return static_cast<Verb>(i);
  }
  throw std::invalid_argument("unknown verb: " + std::string(s));
}

bool verb_applies(const Universe& u, ObjectIndex x, Verb v) {
  switch (v) {
    case Verb::open:
    case Verb::close: return u.has_meta(x, Meta::openable);
    case Verb::toggle_on:
    case Verb::toggle_off: return u.has_meta(x, Meta::toggleable);
    case Verb::heat: return u.has_meta(x, Meta::cookable);
    case Verb::cool: return u.has_meta(x, Meta::freezable);
    case Verb::soak: return u.has_meta(x, Meta::soakable);
    case Verb::slice: return u.has_meta(x, Meta::sliceable);
    case Verb::clean: return u.has_meta(x, Meta::dustyable) || u.has_meta(x, Meta::stainable);
    case Verb::none: break;
  }
  return false;
}

bool subject_admissible(const Universe& u, QuestType type, Verb verb, ObjectIndex x) {
  if (type == QuestType::change_state) return verb_applies(u, x, verb);
  return u.is_movable(x);
}

bool target_admissible(const Universe& u, ObjectIndex t) {
  return (u.is_location(t) || u.is_receptacle(t)) && (u.has_meta(t, Meta::has_inside) || u.has_meta(t, Meta::has_ontop));
}

bool valid_pair(const Universe& u, ObjectIndex x, ObjectIndex t) {
  if (x == t || !u.is_movable(x) || !target_admissible(u, t)) return false;
  return !u.is_receptacle(x) || u.is_location(t);
}

void validate(const Universe& u, const GroundedSubgoal& g) {
  if (g.object < 0 || static_cast<std::size_t>(g.object) >= u.size()) throw UnknownObjectError("bad subgoal object");
  const bool wants_target = g.type == QuestType::move_to;
  if (wants_target != (g.target != kNone)) throw std::invalid_argument("target given iff move-to");
  if ((g.type == QuestType::change_state) != (g.verb != Verb::none)) {
    throw std::invalid_argument("verb given iff change-state");
  }
  if (!subject_admissible(u, g.type, g.verb, g.object)) throw std::invalid_argument("object cannot take this quest");
  if (wants_target && !valid_pair(u, g.object, g.target)) throw std::invalid_argument("invalid move-to target");
}

CompiledGoal compile(const Universe& u, const GroundedSubgoal& g) {
  switch (g.type) {
    case QuestType::bring_me: {
      Literal l;
      l.kind = LitKind::human_holds;
      l.x = g.object;
      return CompiledGoal::single(l);
    }
    case QuestType::move_to: {
      std::vector<Literal> lits;
      for (Relation r : {Relation::in, Relation::on}) {
        if (!u.has_meta(g.target, r == Relation::in ? Meta::has_inside : Meta::has_ontop)) continue;
        Literal l;
        l.kind = LitKind::position;
        l.x = g.object;
        l.y = g.target;
        l.rel = r;
        lits.push_back(l);
      }
      return CompiledGoal::any_of(lits);
    }
    case QuestType::change_state: {
      std::vector<Literal> conj;
      for (auto [f, v] : verb_effects(g.verb)) {
        if (!u.has_meta(g.object, flag_meta(f))) continue;
        Literal l;
        l.kind = LitKind::flag;
        l.x = g.object;
        l.flag = f;
        l.value = v;
        conj.push_back(l);
      }
      return CompiledGoal::any_of_all({conj});
    }
  }
  throw std::logic_error("bad quest type");
}

bool holds(const WorldState& s, const GroundedSubgoal& g) {
  switch (g.type) {
    case QuestType::bring_me: return s.holding(Agent::human) == g.object;
    case QuestType::move_to: {
      const auto& st = s.at(g.object);
      return st.holder == g.target && st.relation != Relation::none;
    }
    case QuestType::change_state: {
      const auto& u = s.universe();
      for (auto [f, v] : verb_effects(g.verb)) {
        if (u.has_meta(g.object, flag_meta(f)) && s.flag(g.object, f) != v) return false;
      }
      return true;
    }
  }
  return false;
}

std::string to_string(const Universe& u, const GroundedSubgoal& g) {
  switch (g.type) {
    case QuestType::bring_me: return "human-holding(" + u.object(g.object).id + ")";
    case QuestType::move_to: return "in-or-on(" + u.object(g.object).id + ", " + u.object(g.target).id + ")";
    case QuestType::change_state: return std::string(verb_name(g.verb)) + "(" + u.object(g.object).id + ")";
  }
  return {};
}

void validate(const LiftedSubgoal& m) {
  if ((m.type == QuestType::change_state) != (m.verb != Verb::none)) {
    throw std::invalid_argument("verb given iff change-state");
  }
  if (m.target && m.type != QuestType::move_to) throw std::invalid_argument("target only for move-to");
  if (!std::is_sorted(m.attrs.begin(), m.attrs.end()) ||
      std::adjacent_find(m.attrs.begin(), m.attrs.end()) != m.attrs.end()) {
    throw std::invalid_argument("attributes must be sorted and unique");
  }
  for (std::size_t i = 1; i < m.attrs.size(); ++i) {
    const auto &a = m.attrs[i - 1], &b = m.attrs[i];
    if (a.kind == b.kind && a.code == b.code) throw std::invalid_argument("conflicting attribute values");
  }
  const auto& cat = Catalog::instance();
  if (m.tier == Tier::cls && m.tier_id > static_cast<std::uint16_t>(ObjectClass::thing)) {
    throw std::invalid_argument("bad class tier");
  }
  if (m.tier == Tier::subclass && m.tier_id >= cat.subclasses().size()) throw std::invalid_argument("bad subclass tier");
  if (m.tier == Tier::category && m.tier_id >= cat.categories().size()) throw std::invalid_argument("bad category tier");
}

int quest_cost(const LiftedSubgoal& m) { return static_cast<int>(m.tier) + m.entry_count(); }

std::string describe(const LiftedSubgoal& m) {
  const auto& cat = Catalog::instance();
  std::string out(quest_type_name(m.type));
  out += "(";
  std::vector<std::string> parts;
  if (m.verb != Verb::none) parts.push_back("verb=" + std::string(verb_name(m.verb)));
  if (m.tier != Tier::none) {
    parts.push_back(std::string(kTierNames[static_cast<int>(m.tier)]) + "=" + tier_value_name(m.tier, m.tier_id));
  }
  for (const auto& a : m.attrs) parts.push_back(attr_text(a));
  if (m.source) parts.push_back(std::string(relation_name(m.source->rel)) + "=" + cat.category(m.source->holder).name);
  if (m.target) parts.push_back("to=" + cat.category(*m.target).name);
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + ")";
}

Json to_json(const LiftedSubgoal& m) {
  const auto& cat = Catalog::instance();
  Json j;
  j["quest_type"] = quest_type_name(m.type);
  j["verb"] = m.verb == Verb::none ? Json(nullptr) : Json(verb_name(m.verb));
  j["category_tier"] = m.tier == Tier::none ? Json(nullptr)
                                            : Json{{"level", kTierNames[static_cast<int>(m.tier)]},
                                                   {"name", tier_value_name(m.tier, m.tier_id)}};
  Json attrs = Json::array();
  for (const auto& a : m.attrs) attrs.push_back(attr_text(a));
  j["attributes"] = attrs;
  j["source_position"] = m.source ? Json{{"relation", relation_name(m.source->rel)},
                                         {"holder", cat.category(m.source->holder).name}}
                                  : Json(nullptr);
  j["target_position"] = m.target ? Json(cat.category(*m.target).name) : Json(nullptr);
  j["cost"] = quest_cost(m);
  return j;
}

LiftedSubgoal lifted_from_json(const Json& j) {
  const auto& cat = Catalog::instance();
  LiftedSubgoal m;
  m.type = parse_quest_type(j.at("quest_type").get<std::string>());
  if (!j.at("verb").is_null()) m.verb = parse_verb(j.at("verb").get<std::string>());
  const auto& t = j.at("category_tier");
  if (!t.is_null()) {
    const auto level = t.at("level").get<std::string>();
    const auto name = t.at("name").get<std::string>();
    if (level == "class") {
      auto c = parse_class(name);
      if (!c) throw std::invalid_argument("unknown class: " + name);
      m.tier = Tier::cls;
      m.tier_id = static_cast<std::uint16_t>(*c);
    } else if (level == "subclass") {
      m.tier = Tier::subclass;
      m.tier_id = cat.subclass_id(name);
    } else if (level == "category") {
      m.tier = Tier::category;
      m.tier_id = cat.category_id(name);
    } else {
      throw std::invalid_argument("unknown tier level: " + level);
    }
  }
  for (const auto& a : j.at("attributes")) m.attrs.push_back(parse_attr(a.get<std::string>()));
  std::sort(m.attrs.begin(), m.attrs.end());
  const auto& src = j.at("source_position");
  if (!src.is_null()) {
    const auto rel = src.at("relation").get<std::string>();
    if (rel != "in" && rel != "on") throw std::invalid_argument("bad relation: " + rel);
    m.source = SourceSpec{rel == "in" ? Relation::in : Relation::on, cat.category_id(src.at("holder").get<std::string>())};
  }
  if (!j.at("target_position").is_null()) m.target = cat.category_id(j.at("target_position").get<std::string>());
  validate(m);
  return m;
}

Json to_json(const Universe& u, const GroundedSubgoal& g) {
  Json j;
  j["quest_type"] = quest_type_name(g.type);
  j["object"] = u.object(g.object).id;
  j["target"] = g.target == kNone ? Json(nullptr) : Json(u.object(g.target).id);
  j["verb"] = g.verb == Verb::none ? Json(nullptr) : Json(verb_name(g.verb));
  return j;
}

GroundedSubgoal grounded_from_json(const Universe& u, const Json& j) {
  GroundedSubgoal g;
  g.type = parse_quest_type(j.at("quest_type").get<std::string>());
  g.object = u.index_of(j.at("object").get<std::string>());
  if (!j.at("target").is_null()) g.target = u.index_of(j.at("target").get<std::string>());
  if (!j.at("verb").is_null()) g.verb = parse_verb(j.at("verb").get<std::string>());
  validate(u, g);
  return g;
}

bool object_matches(const WorldState& s, const LiftedSubgoal& m, ObjectIndex x) {
  const auto& u = s.universe();
  if (!subject_admissible(u, m.type, m.verb, x)) return false;
  const auto& spec = u.category_of(x);
  switch (m.tier) {
    case Tier::cls:
      if (static_cast<std::uint16_t>(spec.cls) != m.tier_id) return false;
      break;
    case Tier::subclass:
      if (spec.subclass != m.tier_id) return false;
      break;
    case Tier::category:
      if (u.object(x).category != m.tier_id) return false;
      break;
    case Tier::none: break;
  }
  const auto& o = u.object(x);
  for (const auto& a : m.attrs) {
    switch (a.kind) {
      case AttrKind::size:
        if (static_cast<std::uint8_t>(o.size) != a.code) return false;
        break;
      case AttrKind::color:
        if (static_cast<std::uint8_t>(o.color) != a.code) return false;
        break;
      case AttrKind::flag: {
        const auto f = static_cast<Flag>(a.code);
        if (!spec.meta.has(flag_meta(f)) || s.flag(x, f) != a.value) return false;
        break;
      }
    }
  }
  if (m.source) {
    const auto& st = s.at(x);
    if (st.holder < 0 || st.relation != m.source->rel || u.object(st.holder).category != m.source->holder) return false;
  }
  return true;
}

bool target_matches(const Universe& u, const LiftedSubgoal& m, ObjectIndex t) {
  if (!target_admissible(u, t)) return false;
  return !m.target || u.object(t).category == *m.target;
}

std::size_t GroundingSet::size() const {
  if (type != QuestType::move_to) return objects.count();
  return live_plain.count() * targets.count() + live_receptacle.count() * location_targets.count();
}

bool GroundingSet::contains(const GroundedSubgoal& g) const {
  if (g.type != type || g.verb != verb) return false;
  const auto x = static_cast<std::size_t>(g.object);
  if (x >= objects.size() || !objects.test(x)) return false;
  if (type != QuestType::move_to) return true;
  const auto t = static_cast<std::size_t>(g.target);
  if (t >= targets.size() || !targets.test(t)) return false;
  return !receptacle_mask.test(x) || location_mask.test(t);
}

std::vector<GroundedSubgoal> GroundingSet::members(const Universe& u) const {
  std::vector<GroundedSubgoal> out;
  for (auto x = objects.find_first(); x != Bitset::npos; x = objects.find_next(x)) {
    if (type != QuestType::move_to) {
      out.push_back(GroundedSubgoal{type, static_cast<ObjectIndex>(x), kNone, verb});
      continue;
    }
    for (auto t = targets.find_first(); t != Bitset::npos; t = targets.find_next(t)) {
      if (valid_pair(u, static_cast<ObjectIndex>(x), static_cast<ObjectIndex>(t))) {
        out.push_back(GroundedSubgoal{type, static_cast<ObjectIndex>(x), static_cast<ObjectIndex>(t), verb});
      }
    }
  }
  return out;
}

void GroundingSet::finalize() {
  if (type != QuestType::move_to) {
    live_plain = objects;
    live_receptacle = Bitset(objects.size());
    location_targets = Bitset(objects.size());
    return;
  }
  location_targets = targets & location_mask;
  live_plain = targets.any() ? objects - receptacle_mask : Bitset(objects.size());
  live_receptacle = location_targets.any() ? objects & receptacle_mask : Bitset(objects.size());
}

GroundingSet grounding_set(const LiftedSubgoal& m, const WorldState& s) {
  const auto& u = s.universe();
  const auto n = u.size();
  GroundingSet g;
  g.type = m.type;
  g.verb = m.verb;
  g.objects.resize(n);
  g.targets.resize(n);
  g.receptacle_mask.resize(n);
  g.location_mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    if (u.is_receptacle(x)) g.receptacle_mask.set(i);
    if (u.is_location(x)) g.location_mask.set(i);
    if (object_matches(s, m, x)) g.objects.set(i);
    if (m.type == QuestType::move_to && target_matches(u, m, x)) g.targets.set(i);
  }
  g.finalize();
  return g;
}

bool subset_of(const GroundingSet& a, const GroundingSet& b) {
  if (a.live_plain.none() && a.live_receptacle.none()) return true;
  if (a.type != b.type || a.verb != b.verb) return false;
  if (a.type != QuestType::move_to) return a.objects.is_subset_of(b.objects);
  if (a.live_plain.any() && !(a.live_plain.is_subset_of(b.objects) && a.targets.is_subset_of(b.targets))) return false;
  if (a.live_receptacle.any() &&
      !(a.live_receptacle.is_subset_of(b.objects) && a.location_targets.is_subset_of(b.targets))) {
    return false;
  }
  return true;
}

bool same_set(const GroundingSet& a, const GroundingSet& b) { return subset_of(a, b) && subset_of(b, a); }

int literal_meaning(const GroundingSet& u, const GroundingSet& m) { return subset_of(m, u) ? 1 : 0; }

int literal_meaning(const LiftedSubgoal& u, const LiftedSubgoal& m, const WorldState& s) {
  if (u.type != m.type || u.verb != m.verb) return 0;
  return literal_meaning(grounding_set(u, s), grounding_set(m, s));
}

std::vector<LiftedSubgoal> relaxations(const LiftedSubgoal& m) {
  const int n_attr = static_cast<int>(m.attrs.size());
  const int n = n_attr + (m.source ? 1 : 0) + (m.target ? 1 : 0) + (m.tier != Tier::none ? 1 : 0);
  std::vector<LiftedSubgoal> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    LiftedSubgoal r;
    r.type = m.type;
    r.verb = m.verb;
    int bit = 0;
    for (int i = 0; i < n_attr; ++i, ++bit) {
      if (mask >> bit & 1u) r.attrs.push_back(m.attrs[static_cast<std::size_t>(i)]);
    }
    if (m.source && (mask >> bit++ & 1u)) r.source = m.source;
    if (m.target && (mask >> bit++ & 1u)) r.target = m.target;
    if (m.tier != Tier::none && (mask >> bit++ & 1u)) {
      r.tier = m.tier;
      r.tier_id = m.tier_id;
    }
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Attr> object_attrs(const WorldState& s, ObjectIndex x, Verb verb) {
  const auto& u = s.universe();
  const auto& o = u.object(x);
  std::vector<Attr> out;
  if (o.size != Size::none) out.push_back(Attr{AttrKind::size, static_cast<std::uint8_t>(o.size), true});
  if (o.color != Color::none) out.push_back(Attr{AttrKind::color, static_cast<std::uint8_t>(o.color), true});
  const auto effects = verb_effects(verb);
  for (int fi = 0; fi < kFlagCount; ++fi) {
    const auto f = static_cast<Flag>(fi);
    if (!u.has_meta(x, flag_meta(f))) continue;
    // The verb's own outcome flag is implied by the quest; clean keeps dusty/stained.
    const bool implied = verb != Verb::clean && std::any_of(effects.begin(), effects.end(),
                                                            [&](const auto& e) { return e.first == f; });
    if (implied) continue;
    out.push_back(Attr{AttrKind::flag, static_cast<std::uint8_t>(f), s.flag(x, f)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<SourceSpec> object_source(const WorldState& s, ObjectIndex x) {
  const auto& st = s.at(x);
  if (st.holder < 0 || st.relation == Relation::none) return std::nullopt;
  return SourceSpec{st.relation, s.universe().object(st.holder).category};
}

}  // namespace pragworld
