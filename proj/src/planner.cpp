#include "pragworld/planner.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <unordered_set>

namespace pragworld {

namespace {

// Relaxed-plan keys. Each key stands for one action the relaxed plan needs; shared keys are
// counted once.
enum KeyKind : std::uint64_t {
  k_move = 1,
  k_pick,
  k_put,
  k_place,  // put an object down anywhere
  k_open,
  k_close,
  k_toggle,
  k_heat,
  k_cool,
  k_soak,
  k_slice,
  k_clean,
  k_give,
  k_take,
  k_free,
};

using Keys = std::vector<std::uint64_t>;
using MaybeKeys = std::optional<Keys>;

std::uint64_t key(KeyKind k, ObjectIndex a = 0, ObjectIndex b = 0) {
  return (static_cast<std::uint64_t>(k) << 40) | (static_cast<std::uint64_t>(static_cast<std::uint16_t>(a)) << 16) |
         static_cast<std::uint64_t>(static_cast<std::uint16_t>(b));
}
KeyKind key_kind(std::uint64_t k) { return static_cast<KeyKind>(k >> 40); }
ObjectIndex key_a(std::uint64_t k) { return static_cast<ObjectIndex>(static_cast<std::uint16_t>(k >> 16)); }

void merge_into(Keys& a, const Keys& b) {
  Keys out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  a.swap(out);
}

class Relaxer {
 public:
  Relaxer(const WorldState& s, Agent agent) : s_(s), u_(s.universe()), agent_(agent) {
    here_ = s.agent_location(agent);
  }

  void add(Keys& k, std::uint64_t v) const { k.push_back(v); }

  void move_to(Keys& k, ObjectIndex loc) const {
    if (loc != here_ && loc >= 0) add(k, key(k_move, loc));
  }

  // Make `obj` (movable, not held by anyone) reachable where it stands.
  bool reach_in_place(Keys& k, ObjectIndex obj) const {
    const auto& st = s_.at(obj);
    if (st.holder < 0) return false;
    if (u_.is_location(st.holder)) {
      move_to(k, st.holder);
      if (st.relation == Relation::in && s_.closed_container(st.holder)) add(k, key(k_open, st.holder));
      return true;
    }
    const auto rec = st.holder;
    const auto& rs = s_.at(rec);
    if (rs.holder < 0) return false;  // receptacle carried by someone
    move_to(k, rs.holder);
    if (rs.relation == Relation::in && s_.closed_container(rs.holder)) add(k, key(k_open, rs.holder));
    if (st.relation == Relation::in && s_.closed_container(rec)) add(k, key(k_open, rec));
    return true;
  }

  // Get `x` into the acting agent's hand.
  bool have(Keys& k, ObjectIndex x) const {
    if (s_.holding(agent_) == x) return true;
    const auto& st = s_.at(x);
    if (st.holder == kHeldByHuman || st.holder == kHeldByRobot) {
      if (agent_ != Agent::robot || st.holder != kHeldByHuman) return false;
      move_to(k, s_.agent_location(Agent::human));
      add(k, key(k_take, x));
      return true;
    }
    if (st.holder >= 0 && u_.is_receptacle(st.holder)) {
      const auto rec = st.holder;
      const auto rh = s_.at(rec).holder;
      if (rh == held_marker(agent_)) {
        add(k, key(k_place, rec));
        add(k, key(k_pick, x));
        return true;
      }
      if (rh == kHeldByHuman) {
        if (agent_ != Agent::robot) return false;
        move_to(k, s_.agent_location(Agent::human));
        add(k, key(k_take, rec));
        add(k, key(k_place, rec));
        add(k, key(k_pick, x));
        return true;
      }
    }
    if (!reach_in_place(k, x)) return false;
    add(k, key(k_pick, x));
    return true;
  }

  // Object must be accessible (not held) for toggle/slice/clean/open.
  bool reach(Keys& k, ObjectIndex x) const {
    if (u_.is_location(x)) {
      move_to(k, x);
      return true;
    }
    const auto h = s_.at(x).holder;
    if (h == held_marker(agent_)) {
      add(k, key(k_place, x));
      return true;
    }
    if (h == kHeldByHuman || h == kHeldByRobot) {
      if (agent_ != Agent::robot) return false;
      move_to(k, s_.agent_location(Agent::human));
      add(k, key(k_take, x));
      add(k, key(k_place, x));
      return true;
    }
    if (h >= 0 && u_.is_receptacle(h) && s_.at(h).holder < 0) {
      if (s_.at(h).holder == held_marker(agent_)) {
        add(k, key(k_place, h));
        return true;
      }
      return false;
    }
    return reach_in_place(k, x);
  }

  // Make holder `y` able to receive an object with relation `rel`.
  bool access_holder(Keys& k, ObjectIndex y, Relation rel) const {
    if (u_.is_location(y)) {
      move_to(k, y);
      if (rel == Relation::in && s_.closed_container(y)) add(k, key(k_open, y));
      return true;
    }
    const auto& ys = s_.at(y);
    if (ys.holder < 0) {
      if (ys.holder == held_marker(agent_)) {
        add(k, key(k_place, y));
      } else if (agent_ == Agent::robot && ys.holder == kHeldByHuman) {
        move_to(k, s_.agent_location(Agent::human));
        add(k, key(k_take, y));
        add(k, key(k_place, y));
      } else {
        return false;
      }
    } else {
      move_to(k, ys.holder);
      if (ys.relation == Relation::in && s_.closed_container(ys.holder)) add(k, key(k_open, ys.holder));
    }
    if (rel == Relation::in && s_.closed_container(y)) add(k, key(k_open, y));
    return true;
  }

  MaybeKeys cheapest_tool(bool knife) const {
    MaybeKeys best;
    for (std::size_t i = 0; i < u_.size(); ++i) {
      const auto t = static_cast<ObjectIndex>(i);
      const auto& name = u_.category_of(t).name;
      if (knife ? !is_knife_category(name) : !is_cleaning_tool_category(name)) continue;
      Keys k;
      if (!have(k, t)) continue;
      normalize(k);
      if (!best || k.size() < best->size()) best = std::move(k);
    }
    return best;
  }

  static void normalize(Keys& k) {
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
  }

  MaybeKeys station_verb(ObjectIndex x, Flag f) const {
    KeyKind verb = f == Flag::cooked ? k_heat : f == Flag::frozen ? k_cool : k_soak;
    auto is_station = [&](ObjectIndex loc) {
      const auto& n = u_.category_of(loc).name;
      return f == Flag::cooked ? is_heater_category(n) : f == Flag::frozen ? n == "refrigerator" : n == "sink";
    };
    MaybeKeys best;
    // Already sitting at a station.
    const auto loc = s_.resolved_location(x);
    if (loc >= 0 && is_station(loc) && s_.at(x).holder >= 0) {
      Keys k;
      if (reach_in_place(k, x)) {
        add(k, key(verb, x));
        normalize(k);
        best = std::move(k);
      }
    }
    for (ObjectIndex st : u_.locations()) {
      if (!is_station(st)) continue;
      Keys k;
      if (!have(k, x)) break;
      move_to(k, st);
      add(k, key(verb, x));
      normalize(k);
      if (!best || k.size() < best->size()) best = std::move(k);
    }
    return best;
  }

  MaybeKeys literal(const Literal& l) const {
    if (l.holds(s_)) return Keys{};
    Keys k;
    switch (l.kind) {
      case LitKind::position:
        if (!l.value) {
          if (!have(k, l.x)) return std::nullopt;
          add(k, key(k_place, l.x));
          break;
        }
        if (!have(k, l.x) || !access_holder(k, l.y, l.rel)) return std::nullopt;
        add(k, key(k_put, l.x, l.y));
        break;
      case LitKind::human_holds:
        if (!l.value || agent_ != Agent::robot) return std::nullopt;
        if (!have(k, l.x)) return std::nullopt;
        move_to(k, s_.agent_location(Agent::human));
        if (const auto hh = s_.holding(Agent::human); hh != kNone) {
          add(k, key(k_take, hh));
          add(k, key(k_place, hh));
        }
        add(k, key(k_give, l.x));
        break;
      case LitKind::flag:
        switch (l.flag) {
          case Flag::open:
            if (u_.is_location(l.x)) {
              move_to(k, l.x);
            } else {
              const auto h = s_.at(l.x).holder;
              if (h < 0 || !u_.is_location(h)) {
                if (!reach(k, l.x)) return std::nullopt;
              } else {
                move_to(k, h);
                if (s_.at(l.x).relation == Relation::in && s_.closed_container(h)) add(k, key(k_open, h));
              }
            }
            add(k, key(l.value ? k_open : k_close, l.x));
            break;
          case Flag::toggled:
            if (!reach(k, l.x)) return std::nullopt;
            add(k, key(k_toggle, l.x));
            break;
          case Flag::cooked:
          case Flag::frozen:
          case Flag::soaked: {
            if (!l.value) return std::nullopt;
            return station_verb(l.x, l.flag);
          }
          case Flag::sliced: {
            if (!l.value) return std::nullopt;
            auto tool = cheapest_tool(true);
            if (!tool) return std::nullopt;
            k = std::move(*tool);
            if (!reach(k, l.x)) return std::nullopt;
            add(k, key(k_slice, l.x));
            break;
          }
          case Flag::dusty:
          case Flag::stained: {
            if (l.value) return std::nullopt;
            auto tool = cheapest_tool(false);
            if (!tool) return std::nullopt;
            k = std::move(*tool);
            if (!reach(k, l.x)) return std::nullopt;
            add(k, key(k_clean, l.x));
            break;
          }
        }
        break;
    }
    normalize(k);
    return k;
  }

  MaybeKeys node(const CompiledGoal& g, std::int32_t i) const {
    const auto& n = g.node(i);
    switch (n.kind) {
      case NodeKind::truth: return Keys{};
      case NodeKind::falsity: return std::nullopt;
      case NodeKind::lit: return literal(g.literals()[static_cast<std::size_t>(n.lit)]);
      case NodeKind::conj: {
        Keys acc;
        for (auto c : n.kids) {
          auto k = node(g, c);
          if (!k) return std::nullopt;
          if (!k->empty()) merge_into(acc, *k);
        }
        return acc;
      }
      case NodeKind::disj: {
        MaybeKeys best;
        for (auto c : n.kids) {
          auto k = node(g, c);
          if (k && (!best || k->size() < best->size())) {
            best = std::move(k);
            if (best->empty()) break;
          }
        }
        return best;
      }
    }
    return std::nullopt;
  }

  int estimate(const CompiledGoal& g) const {
    auto k = node(g, g.root());
    if (!k) return -1;
    // A held object with no planned destination must be set down before the next pick.
    const auto held = s_.holding(agent_);
    if (held != kNone && !k->empty()) {
      bool picks = false, disposes = false;
      for (auto v : *k) {
        const auto kk = key_kind(v);
        picks = picks || kk == k_pick || kk == k_take;
        if ((kk == k_put || kk == k_place || kk == k_give) && key_a(v) == held) disposes = true;
      }
      if (picks && !disposes) return static_cast<int>(k->size()) + 1;
    }
    return static_cast<int>(k->size());
  }

 private:
  const WorldState& s_;
  const Universe& u_;
  Agent agent_;
  ObjectIndex here_;
};

// Compact per-node state: only the objects the search can change.
struct Projection {
  std::vector<ObjectState> objects;
  std::array<ObjectIndex, 2> loc{};
  std::array<ObjectIndex, 2> hold{};
};

struct SearchNode {
  Projection proj;
  std::int32_t parent;
  GroundedAction action;
};

Projection project(const WorldState& s, const std::vector<ObjectIndex>& keys) {
  Projection p;
  p.objects.reserve(keys.size());
  for (auto o : keys) p.objects.push_back(s.at(o));
  p.loc = {s.agent_location(Agent::human), s.agent_location(Agent::robot)};
  p.hold = {s.holding(Agent::human), s.holding(Agent::robot)};
  return p;
}

void restore(WorldState& s, const std::vector<ObjectIndex>& keys, const Projection& p) {
  for (std::size_t i = 0; i < keys.size(); ++i) s.at(keys[i]) = p.objects[i];
  s.set_agent_location(Agent::human, p.loc[0]);
  s.set_agent_location(Agent::robot, p.loc[1]);
  s.set_holding_raw(Agent::human, p.hold[0]);
  s.set_holding_raw(Agent::robot, p.hold[1]);
}

std::uint64_t digest(const WorldState& s, const std::vector<ObjectIndex>& keys) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  };
  for (auto o : keys) {
    const auto& st = s.at(o);
    mix((static_cast<std::uint64_t>(static_cast<std::uint16_t>(st.holder)) << 16) |
        (static_cast<std::uint64_t>(st.relation) << 8) | st.flags);
  }
  for (Agent a : {Agent::human, Agent::robot}) {
    mix((static_cast<std::uint64_t>(static_cast<std::uint16_t>(s.agent_location(a))) << 16) |
        static_cast<std::uint16_t>(s.holding(a)));
  }
  return h;
}

int conjunct_heuristic(const WorldState& s, const CompiledGoal& g) {
  return static_cast<int>(g.conjunct_roots().size() - g.satisfied_conjuncts(s));
}

}  // namespace

void validate(const PlannerConfig& config) {
  if (config.node_budget <= 0) throw std::invalid_argument("node_budget must be positive");
}

int relaxed_heuristic(const WorldState& s, Agent agent, const CompiledGoal& goal) {
  return Relaxer(s, agent).estimate(goal);
}

std::vector<ObjectIndex> relevant_objects(const WorldState& s, Agent agent, const CompiledGoal& goal) {
  const auto& u = s.universe();
  std::vector<char> in(u.size(), 0);
  bool need_knife = false, need_cleaner = false;
  for (const auto& l : goal.literals()) {
    in[static_cast<std::size_t>(l.x)] = 1;
    if (l.kind == LitKind::position) in[static_cast<std::size_t>(l.y)] = 1;
    if (l.kind == LitKind::flag) {
      need_knife = need_knife || (l.flag == Flag::sliced && l.value);
      need_cleaner = need_cleaner || ((l.flag == Flag::dusty || l.flag == Flag::stained) && !l.value);
    }
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& name = u.category_of(static_cast<ObjectIndex>(i)).name;
    if ((need_knife && is_knife_category(name)) || (need_cleaner && is_cleaning_tool_category(name))) in[i] = 1;
  }
  for (Agent a : {Agent::human, Agent::robot}) {
    if (s.holding(a) != kNone) in[static_cast<std::size_t>(s.holding(a))] = 1;
  }
  (void)agent;
  // Close under the holder relation.
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!in[i]) continue;
    for (ObjectIndex h = s.at(static_cast<ObjectIndex>(i)).holder; h >= 0; h = s.at(h).holder) {
      in[static_cast<std::size_t>(h)] = 1;
      if (u.is_location(h)) break;
    }
  }
  for (auto l : u.locations()) in[static_cast<std::size_t>(l)] = 1;
  std::vector<ObjectIndex> out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (in[i]) out.push_back(static_cast<ObjectIndex>(i));
  }
  return out;
}

Plan plan(const WorldState& s, Agent agent, const CompiledGoal& goal, const PlannerConfig& config) {
  validate(config);
  Plan result;
  if (goal.evaluate(s)) return result;
  auto h_of = [&](const WorldState& st) {
    return config.heuristic == HeuristicKind::ff_relaxed ? relaxed_heuristic(st, agent, goal)
                                                         : conjunct_heuristic(st, goal);
  };
  const int h0 = relaxed_heuristic(s, agent, goal);
  if (h0 < 0) throw NoPlanError(NoPlanError::Reason::relaxed_unreachable, "goal unreachable in the relaxation");

  const auto keys = relevant_objects(s, agent, goal);
  std::vector<SearchNode> nodes;
  nodes.push_back(SearchNode{project(s, keys), -1, {}});
  std::unordered_set<std::uint64_t> seen{digest(s, keys)};
  using Entry = std::tuple<int, std::int64_t, std::int32_t>;  // h, seq, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::int64_t seq = 0;
  open.emplace(config.heuristic == HeuristicKind::ff_relaxed ? h0 : h_of(s), seq++, 0);

  WorldState cur = s;
  std::vector<GroundedAction> acts;
  std::int64_t expansions = 0;
  std::int32_t found = -1;
  while (!open.empty() && found < 0) {
    const auto [h, sq, idx] = open.top();
    (void)h;
    (void)sq;
    open.pop();
    if (++expansions > config.node_budget) break;
    restore(cur, keys, nodes[static_cast<std::size_t>(idx)].proj);
    acts.clear();
    enumerate_actions(cur, agent, keys, false, acts);
    for (const auto& a : acts) {
      WorldState next = cur;
      apply_in_place(next, a);
      if (!seen.insert(digest(next, keys)).second) continue;
      nodes.push_back(SearchNode{project(next, keys), idx, a});
      const auto child = static_cast<std::int32_t>(nodes.size() - 1);
      if (goal.evaluate(next)) {
        found = child;
        break;
      }
      const int hc = h_of(next);
      if (hc < 0) continue;
      open.emplace(hc, seq++, child);
    }
  }
  if (found < 0) {
    throw NoPlanError(NoPlanError::Reason::budget_exhausted, "no plan found within the node budget");
  }
  for (auto i = found; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
    result.actions.push_back(nodes[static_cast<std::size_t>(i)].action);
  }
  std::reverse(result.actions.begin(), result.actions.end());
  WorldState st = s;
  for (const auto& a : result.actions) {
    result.total_cost += action_cost(st, a);
    st = apply(st, a);
  }
  if (!goal.evaluate(st)) throw std::logic_error("planner produced a plan that misses the goal");
  return result;
}

Plan plan(const WorldState& s, Agent agent, const Formula& goal, const PlannerConfig& config) {
  const auto free = free_variables(goal);
  if (!free.empty()) throw FreeVariableError("free variable in goal: " + free.front());
  return plan(s, agent, CompiledGoal::compile(s.universe(), goal), config);
}

double cost_to_go(const WorldState& s, Agent agent, const CompiledGoal& goal, const PlannerConfig& config) {
  return plan(s, agent, goal, config).total_cost;
}

WorldState execute(const WorldState& s, const std::vector<GroundedAction>& actions) {
  WorldState st = s;
  for (const auto& a : actions) st = apply(st, a);
  return st;
}

WorldState validate_plan(const WorldState& s, const Plan& p, const CompiledGoal& goal) {
  auto st = execute(s, p.actions);
  if (!goal.evaluate(st)) throw std::logic_error("plan does not reach the goal");
  return st;
}

std::ptrdiff_t next_pickup(const Plan& p, std::size_t t) {
  for (std::size_t i = t; i < p.actions.size(); ++i) {
    const auto sc = p.actions[i].schema;
    if (sc == Schema::pick_up_at_loc || sc == Schema::pick_up_from_rec_at_loc) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::vector<std::size_t> truncation_points(const WorldState& s0, const Plan& p, TruncateMode mode) {
  std::vector<std::size_t> out;
  const auto n = p.actions.size();
  if (n < 2) return out;
  if (mode == TruncateMode::v1_uniform) {
    for (std::size_t t = 1; t < n; ++t) out.push_back(t);
    return out;
  }
  const auto& u = s0.universe();
  std::vector<char> seen(Catalog::instance().categories().size(), 0);
  WorldState s = s0;
  for (std::size_t t = 1; t < n; ++t) {
    const auto& prev = p.actions[t - 1];
    for (int i = 0; i < schema_arity(prev.schema); ++i) seen[u.object(prev.args[static_cast<std::size_t>(i)]).category] = 1;
    apply_in_place(s, prev);
    if (s.holding(p.actions[t].agent) != kNone) continue;
    const auto j = next_pickup(p, t);
    if (j < 0) continue;
    if (seen[u.object(p.actions[static_cast<std::size_t>(j)].args[0]).category]) out.push_back(t);
  }
  return out;
}

Truncation truncate(const WorldState& s0, const Plan& p, Rng& rng, TruncateMode mode) {
  if (p.actions.empty()) throw std::invalid_argument("cannot truncate an empty plan");
  const auto points = truncation_points(s0, p, mode);
  if (points.empty()) throw TruncationError("no admissible truncation point");
  Truncation tr;
  tr.step = points[static_cast<std::size_t>(rng.below(points.size()))];
  tr.prefix.assign(p.actions.begin(), p.actions.begin() + static_cast<std::ptrdiff_t>(tr.step));
  tr.state = execute(s0, tr.prefix);
  return tr;
}

}  // namespace pragworld
