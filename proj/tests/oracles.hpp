// Independent oracles and random instance generators shared by the unit tests and the
// acceptance runner.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pragworld/formula.hpp"
#include "pragworld/goals.hpp"
#include "pragworld/rsa.hpp"
#include "pragworld/scene.hpp"
#include "pragworld/subgoal.hpp"
#include "rsa_fixture_values.hpp"

namespace oracles {

using namespace pragworld;

// ---- first-order goal evaluation

// Plain recursive interpreter over every assignment; shares nothing with the compiler.
inline bool fol_oracle(const WorldState& s, const Formula& f, std::map<std::string, ObjectIndex>& env) {
  const auto& u = s.universe();
  auto obj = [&](const std::string& a) -> ObjectIndex {
    if (auto it = env.find(a); it != env.end()) return it->second;
    return u.index_of(a);
  };
  switch (f.kind) {
    case FormulaKind::forall:
    case FormulaKind::exists: {
      const bool all = f.kind == FormulaKind::forall;
      const auto saved = env.count(f.var) ? std::optional<ObjectIndex>(env[f.var]) : std::nullopt;
      bool result = all;
      for (std::size_t i = 0; i < u.size(); ++i) {
        env[f.var] = static_cast<ObjectIndex>(i);
        const bool v = fol_oracle(s, *f.children[0], env);
        if (all && !v) result = false;
        if (!all && v) result = true;
      }
      if (saved) env[f.var] = *saved;
      else env.erase(f.var);
      return result;
    }
    case FormulaKind::conj: {
      bool r = true;
      for (const auto& c : f.children) r = fol_oracle(s, *c, env) && r;
      return r;
    }
    case FormulaKind::disj: {
      bool r = false;
      for (const auto& c : f.children) r = fol_oracle(s, *c, env) || r;
      return r;
    }
    case FormulaKind::implies: return !fol_oracle(s, *f.children[0], env) || fol_oracle(s, *f.children[1], env);
    case FormulaKind::negation: return !fol_oracle(s, *f.children[0], env);
    case FormulaKind::type_test: {
      const auto& cat = Catalog::instance();
      const auto& spec = u.category_of(obj(f.args[0]));
      return spec.name == f.predicate || cat.subclass(spec.subclass).name == f.predicate ||
             class_name(spec.cls) == f.predicate;
    }
    case FormulaKind::flag_test: return s.flag(obj(f.args[0]), *parse_flag(f.predicate));
    case FormulaKind::relation: {
      const auto& st = s.at(obj(f.args[0]));
      return st.holder == obj(f.args[1]) && st.relation == (f.predicate == "in" ? Relation::in : Relation::on);
    }
  }
  return false;
}

inline bool fol_oracle(const WorldState& s, const Formula& f) {
  std::map<std::string, ObjectIndex> env;
  return fol_oracle(s, f, env);
}

// At most eight objects: three locations plus up to five movables with legal random placements.
inline WorldState random_small_world(Rng& rng) {
  static const char* kMovable[] = {"apple", "banana", "carrot", "knife", "rag", "box", "jar", "book", "hat"};
  fixtures::WorldBuilder b;
  const auto floor = b.add("floor");
  const auto table = b.add("table");
  const auto cabinet = b.add("cabinet");
  const int n = static_cast<int>(rng.uniform_int(1, 5));
  std::vector<ObjectIndex> recs, plain;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    const std::string c = kMovable[rng.below(std::size(kMovable))];
    const auto x = b.add(c);
    names.push_back(c);
    (c == "box" || c == "jar" ? recs : plain).push_back(x);
  }
  const ObjectIndex locs[] = {floor, table, cabinet};
  for (auto r : recs) {
    const auto h = locs[rng.below(3)];
    b.put(r, h == cabinet ? Relation::in : Relation::on, h);
  }
  for (auto x : plain) {
    if (!recs.empty() && rng.bernoulli(0.4)) {
      b.put(x, Relation::in, rng.pick(recs));
    } else {
      const auto h = locs[rng.below(3)];
      b.put(x, h == cabinet ? Relation::in : Relation::on, h);
    }
  }
  auto s = b.build(floor);
  const auto& u = s.universe();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    for (int f = 0; f < kFlagCount; ++f) {
      const auto fl = static_cast<Flag>(f);
      if (u.has_meta(x, flag_meta(fl)) && rng.bernoulli(0.5)) s.set_flag(x, fl, true);
    }
  }
  return s;
}

inline FormulaPtr random_formula(const WorldState& s, Rng& rng, std::vector<std::string>& bound, int depth) {
  static const char* kTypes[] = {"apple", "fruit", "food", "box", "receptacle", "table", "location", "knife", "thing", "hat"};
  static const char* kFlags[] = {"open", "cooked", "frozen", "dusty", "stained", "sliced", "soaked"};
  const auto& u = s.universe();
  auto term = [&]() -> std::string {
    if (!bound.empty() && rng.bernoulli(0.8)) return rng.pick(bound);
    return u.object(static_cast<ObjectIndex>(rng.below(u.size()))).id;
  };
  const auto r = depth <= 0 ? 5 + rng.below(3) : rng.below(8);
  switch (r) {
    case 0:
    case 1: {
      const std::string v = "v" + std::to_string(bound.size());
      bound.push_back(v);
      auto body = random_formula(s, rng, bound, depth - 1);
      bound.pop_back();
      return make_quant(r == 0 ? FormulaKind::forall : FormulaKind::exists, v, body);
    }
    case 2: return make_conj({random_formula(s, rng, bound, depth - 1), random_formula(s, rng, bound, depth - 1)});
    case 3: return make_implies(random_formula(s, rng, bound, depth - 1), random_formula(s, rng, bound, depth - 1));
    case 4: return make_not(random_formula(s, rng, bound, depth - 1));
    case 5: return make_atom(FormulaKind::type_test, kTypes[rng.below(std::size(kTypes))], {term()});
    case 6: return make_atom(FormulaKind::flag_test, kFlags[rng.below(std::size(kFlags))], {term()});
    default: return make_atom(FormulaKind::relation, rng.bernoulli(0.5) ? "in" : "on", {term(), term()});
  }
}


// ---- grounding sets

// Independent reading of the grounding rules, straight from the catalog metadata.
struct GroundingOracle {
  const WorldState& s;
  const Universe& u = s.universe();

  MetaSet meta(ObjectIndex x) const { return u.category_of(x).meta; }
  ObjectClass cls(ObjectIndex x) const { return u.category_of(x).cls; }

  bool subject(const LiftedSubgoal& m, ObjectIndex x) const {
    if (m.type != QuestType::change_state) return cls(x) != ObjectClass::location;
    const auto mt = meta(x);
    switch (m.verb) {
      case Verb::toggle_on:
      case Verb::toggle_off: return mt.has(Meta::toggleable);
      case Verb::heat: return mt.has(Meta::cookable);
      case Verb::cool: return mt.has(Meta::freezable);
      case Verb::soak: return mt.has(Meta::soakable);
      case Verb::slice: return mt.has(Meta::sliceable);
      case Verb::clean: return mt.has(Meta::dustyable) || mt.has(Meta::stainable);
      case Verb::open:
      case Verb::close: return mt.has(Meta::openable);
      case Verb::none: break;
    }
    return false;
  }

  bool target(const LiftedSubgoal& m, ObjectIndex t) const {
    const bool place = cls(t) == ObjectClass::location || cls(t) == ObjectClass::receptacle;
    if (!place || !(meta(t).has(Meta::has_inside) || meta(t).has(Meta::has_ontop))) return false;
    return !m.target || u.object(t).category == *m.target;
  }

  bool filter(const LiftedSubgoal& m, ObjectIndex x) const {
    if (!subject(m, x)) return false;
    const auto& o = u.object(x);
    const auto& c = u.category_of(x);
    if (m.tier == Tier::cls && static_cast<std::uint16_t>(c.cls) != m.tier_id) return false;
    if (m.tier == Tier::subclass && c.subclass != m.tier_id) return false;
    if (m.tier == Tier::category && o.category != m.tier_id) return false;
    static const std::map<Flag, Meta> kFlagMeta = {
        {Flag::open, Meta::openable},     {Flag::cooked, Meta::cookable}, {Flag::frozen, Meta::freezable},
        {Flag::dusty, Meta::dustyable},   {Flag::stained, Meta::stainable}, {Flag::sliced, Meta::sliceable},
        {Flag::soaked, Meta::soakable},   {Flag::toggled, Meta::toggleable}};
    for (const auto& a : m.attrs) {
      if (a.kind == AttrKind::size && static_cast<int>(o.size) != a.code) return false;
      if (a.kind == AttrKind::color && static_cast<int>(o.color) != a.code) return false;
      if (a.kind == AttrKind::flag) {
        const auto f = static_cast<Flag>(a.code);
        if (!c.meta.has(kFlagMeta.at(f)) || s.flag(x, f) != a.value) return false;
      }
    }
    if (m.source) {
      const auto& st = s.at(x);
      if (st.holder < 0 || st.relation != m.source->rel) return false;
      if (u.object(st.holder).category != m.source->holder) return false;
    }
    return true;
  }

  std::set<GroundedSubgoal> set(const LiftedSubgoal& m) const {
    std::set<GroundedSubgoal> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto x = static_cast<ObjectIndex>(i);
      if (!filter(m, x)) continue;
      if (m.type != QuestType::move_to) {
        out.insert({m.type, x, kNone, m.verb});
        continue;
      }
      for (std::size_t j = 0; j < u.size(); ++j) {
        const auto t = static_cast<ObjectIndex>(j);
        if (t == x || !target(m, t)) continue;
        if (cls(x) == ObjectClass::receptacle && cls(t) != ObjectClass::location) continue;
        out.insert({m.type, x, t, m.verb});
      }
    }
    return out;
  }
};

inline std::set<GroundedSubgoal> as_set(const std::vector<GroundedSubgoal>& v) { return {v.begin(), v.end()}; }

// Random lifted subgoal anchored on a random object, so most are nonempty.
inline LiftedSubgoal random_lifted(const WorldState& s, Rng& rng) {
  const auto& u = s.universe();
  LiftedSubgoal m;
  m.type = static_cast<QuestType>(rng.below(3));
  if (m.type == QuestType::change_state) m.verb = rng.pick(std::vector<Verb>(std::begin(kQuestVerbs), std::end(kQuestVerbs)));
  const auto x = static_cast<ObjectIndex>(rng.below(u.size()));
  const auto& c = u.category_of(x);
  m.tier = static_cast<Tier>(rng.below(4));
  if (m.tier == Tier::cls) m.tier_id = static_cast<std::uint16_t>(c.cls);
  if (m.tier == Tier::subclass) m.tier_id = c.subclass;
  if (m.tier == Tier::category) m.tier_id = u.object(x).category;
  for (auto a : object_attrs(s, x, m.verb)) {
    if (!rng.bernoulli(0.4)) continue;
    if (a.kind == AttrKind::flag && rng.bernoulli(0.15)) a.value = !a.value;
    m.attrs.push_back(a);
  }
  std::sort(m.attrs.begin(), m.attrs.end());
  if (rng.bernoulli(0.3)) m.source = object_source(s, x);
  if (m.type == QuestType::move_to && rng.bernoulli(0.6)) {
    m.target = u.object(static_cast<ObjectIndex>(rng.below(u.size()))).category;
  }
  return m;
}

// A sampled scene cut down to desk scale: locations plus a few dozen movables.
inline WorldState desk_scene(std::uint64_t seed, double keep) {
  SceneConfig c;
  c.rng_seed = seed;
  const auto full = sample_scene(c);
  Rng rng(seed * 7 + 1);
  return fixtures::restrict(full, [&](ObjectIndex) { return rng.bernoulli(keep); });
}


// ---- planning instances

struct Instance {
  WorldState s;
  CompiledGoal goal;
  std::string text;
};

// Six movables over four locations; goal: one or two placements, possibly with a state change.
inline Instance random_instance(Rng& rng) {
  static const char* kMovable[] = {"apple", "banana", "carrot", "knife", "rag", "box", "book", "hat", "bowl"};
  fixtures::WorldBuilder b;
  const auto floor = b.add("floor");
  const auto table = b.add("table");
  const auto cabinet = b.add("cabinet");
  const auto fridge = b.add("refrigerator");
  const ObjectIndex locs[] = {floor, table, cabinet, fridge};
  std::vector<ObjectIndex> movables;
  for (int i = 0; i < 6; ++i) {
    const auto x = b.add(kMovable[rng.below(std::size(kMovable))]);
    movables.push_back(x);
    const auto h = locs[rng.below(4)];
    b.put(x, h == table || h == floor ? Relation::on : Relation::in, h);
  }
  Instance in;
  in.s = b.build(floor);
  const auto& u = in.s.universe();
  std::vector<Literal> lits;
  const int n = static_cast<int>(rng.uniform_int(1, 2));
  for (int i = 0; i < n; ++i) {
    const auto x = rng.pick(movables);
    const auto to = locs[rng.below(4)];
    Literal l;
    l.kind = LitKind::position;
    l.x = x;
    l.y = to;
    l.rel = to == table || to == floor ? Relation::on : Relation::in;
    lits.push_back(l);
    in.text += u.object(x).id + "->" + u.object(to).id + " ";
  }
  if (rng.bernoulli(0.3)) {
    Literal l;
    l.kind = LitKind::flag;
    l.x = rng.pick(movables);
    l.flag = Flag::frozen;
    if (u.has_meta(l.x, Meta::freezable)) {
      lits.push_back(l);
      in.text += "frozen " + u.object(l.x).id;
    }
  }
  in.goal = CompiledGoal::any_of_all({lits});
  return in;
}


// ---- RSA fixture

inline RsaProblem rsa_fixture_problem() {
  RsaProblem p;
  for (double x : rsa_fixture::kPrior) p.log_prior.push_back(std::log(x));
  for (double c : rsa_fixture::kCost) p.utterance_cost.push_back(c);
  for (int u = 0; u < 3; ++u) {
    std::vector<std::int32_t> sup;
    for (int m = 0; m < 3; ++m) {
      if (rsa_fixture::kLiteral[u][m]) sup.push_back(m);
    }
    p.support.push_back(sup);
  }
  return p;
}

inline LiftedSubgoal bring(Tier tier, std::string_view name) {
  LiftedSubgoal m;
  m.type = QuestType::bring_me;
  m.tier = tier;
  const auto& cat = Catalog::instance();
  if (tier == Tier::category) m.tier_id = cat.category_id(name);
  if (tier == Tier::subclass) m.tier_id = cat.subclass_id(name);
  if (tier == Tier::cls) m.tier_id = static_cast<std::uint16_t>(*parse_class(name));
  return m;
}


// Bring-me meanings apple / carrot / knife and utterances "that" / food / fruit on a table:
// the fixture's literal relation, with quest costs 0 / 1 / 2 as its utterance costs.
struct RsaScene {
  WorldState s;
  std::vector<LiftedSubgoal> meanings, utterances;
};

inline RsaScene rsa_scene() {
  fixtures::WorldBuilder b;
  const auto floor = b.add("floor");
  const auto table = b.add("table");
  for (const char* c : {"apple", "carrot", "knife"}) b.put(b.add(c), Relation::on, table);
  RsaScene r;
  r.s = b.build(floor);
  r.meanings = {bring(Tier::category, "apple"), bring(Tier::category, "carrot"), bring(Tier::category, "knife")};
  r.utterances = {bring(Tier::none, ""), bring(Tier::cls, "food"), bring(Tier::subclass, "fruit")};
  return r;
}

}  // namespace oracles
