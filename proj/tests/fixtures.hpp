// Small hand-built worlds and desk-scale restrictions of sampled scenes.
#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pragworld/actions.hpp"
#include "pragworld/catalog.hpp"
#include "pragworld/goal_compile.hpp"
#include "pragworld/scene.hpp"
#include "pragworld/world.hpp"

namespace fixtures {

using namespace pragworld;

// Builder: declare objects, then place them on the built state.
class WorldBuilder {
 public:
  ObjectIndex add(const std::string& category, Size size = Size::none, Color color = Color::none) {
    const auto c = Catalog::instance().category_id(category);
    const auto& meta = Catalog::instance().category(c).meta;
    // Sized or colored categories need a value; default to small and blue.
    if (size == Size::none && meta.has(Meta::has_size)) size = Size::small;
    if (color == Color::none && meta.has(Meta::has_color)) color = Color::blue;
    const int k = ++counts_[category];
    objects_.push_back(ObjectInstance{make_object_id(category, k), c, size, color});
    return static_cast<ObjectIndex>(objects_.size() - 1);
  }

  struct Placement {
    ObjectIndex obj;
    Relation rel;
    ObjectIndex holder;
  };
  void put(ObjectIndex obj, Relation rel, ObjectIndex holder) { placements_.push_back({obj, rel, holder}); }
  void flag(ObjectIndex obj, Flag f, bool v = true) { flags_.push_back({obj, f, v}); }

  WorldState build(ObjectIndex start) const {
    WorldState s(std::make_shared<const Universe>(objects_));
    for (const auto& p : placements_) s.place(p.obj, p.rel, p.holder);
    for (const auto& f : flags_) s.set_flag(f.obj, f.f, f.v);
    s.set_agent_location(Agent::human, start);
    s.set_agent_location(Agent::robot, start);
    s.validate();
    return s;
  }

 private:
  struct FlagSet {
    ObjectIndex obj;
    Flag f;
    bool v;
  };
  std::vector<ObjectInstance> objects_;
  std::map<std::string, int> counts_;
  std::vector<Placement> placements_;
  std::vector<FlagSet> flags_;
};

// A kitchen corner: two apples on the table, a banana in the closed refrigerator, a knife on
// the countertop, a large red box on the floor with a rag inside.
struct Kitchen {
  WorldState s;
  ObjectIndex floor, table, countertop, refrigerator, sofa, apple1, apple2, banana, knife, box, rag;
};

inline Kitchen kitchen() {
  WorldBuilder b;
  Kitchen k;
  k.floor = b.add("floor");
  k.table = b.add("table");
  k.countertop = b.add("countertop");
  k.refrigerator = b.add("refrigerator");
  k.sofa = b.add("sofa");
  k.apple1 = b.add("apple");
  k.apple2 = b.add("apple");
  k.banana = b.add("banana");
  k.knife = b.add("knife");
  k.box = b.add("box", Size::large, Color::red);
  k.rag = b.add("rag");
  b.put(k.apple1, Relation::on, k.table);
  b.put(k.apple2, Relation::on, k.table);
  b.put(k.banana, Relation::in, k.refrigerator);
  b.put(k.knife, Relation::on, k.countertop);
  b.put(k.box, Relation::on, k.floor);
  b.put(k.rag, Relation::in, k.box);
  b.flag(k.box, Flag::open);
  k.s = b.build(k.floor);
  return k;
}

// Copy of s keeping the objects accepted by `keep` (locations always stay). Objects whose
// holder is dropped are dropped too. Agents keep their locations; nothing may be held.
inline WorldState restrict(const WorldState& s, const std::function<bool(ObjectIndex)>& keep) {
  const auto& u = s.universe();
  std::vector<ObjectIndex> map(u.size(), kNone);
  std::vector<ObjectInstance> objs;
  // Chains are at most location > receptacle > object, so a few passes settle them.
  std::vector<char> kept(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    kept[i] = u.is_location(x) || keep(x);
  }
  for (int pass = 0; pass < 3; ++pass) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto h = s.at(static_cast<ObjectIndex>(i)).holder;
      if (kept[i] && h >= 0 && !kept[static_cast<std::size_t>(h)]) kept[i] = 0;
    }
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!kept[i]) continue;
    map[i] = static_cast<ObjectIndex>(objs.size());
    objs.push_back(u.objects()[i]);
  }
  WorldState out(std::make_shared<const Universe>(objs));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!kept[i]) continue;
    const auto& st = s.at(static_cast<ObjectIndex>(i));
    auto& o = out.at(map[i]);
    o.flags = st.flags;
    if (st.holder >= 0) {
      o.holder = map[static_cast<std::size_t>(st.holder)];
      o.relation = st.relation;
    }
  }
  out.set_agent_location(Agent::human, map[static_cast<std::size_t>(s.agent_location(Agent::human))]);
  out.set_agent_location(Agent::robot, map[static_cast<std::size_t>(s.agent_location(Agent::robot))]);
  out.validate();
  return out;
}

inline std::string state_key(const WorldState& s) {
  std::string k;
  for (const auto& o : s.object_states()) {
    k.append(reinterpret_cast<const char*>(&o.holder), sizeof o.holder);
    k.push_back(static_cast<char>(o.relation));
    k.push_back(static_cast<char>(o.flags));
  }
  for (auto a : {Agent::human, Agent::robot}) {
    const auto l = s.agent_location(a), h = s.holding(a);
    k.append(reinterpret_cast<const char*>(&l), sizeof l);
    k.append(reinterpret_cast<const char*>(&h), sizeof h);
  }
  return k;
}

// Breadth-first search over every applicable action: optimal under unit costs.
inline std::optional<std::size_t> optimal_length(const WorldState& s0, Agent agent, const CompiledGoal& goal,
                                                 std::size_t max_states = 400000) {
  std::deque<std::pair<WorldState, std::size_t>> q;
  std::unordered_map<std::string, char> seen;
  q.emplace_back(s0, 0);
  seen.emplace(state_key(s0), 1);
  while (!q.empty()) {
    auto [s, d] = std::move(q.front());
    q.pop_front();
    if (goal.evaluate(s)) return d;
    for (const auto& a : valid_actions(s, agent)) {
      if (is_meta_schema(a.schema)) continue;
      auto n = apply(s, a);
      if (seen.emplace(state_key(n), 1).second) q.emplace_back(std::move(n), d + 1);
    }
    if (seen.size() > max_states) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace fixtures
