#include "pragworld/actions.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace pragworld {

namespace {

struct SchemaInfo {
  std::string_view name;
  int arity;
};

constexpr std::array<SchemaInfo, kSchemaCount> kSchemas = {{
    {"move", 2},
    {"pick-up-at-loc", 2},
    {"pick-up-from-rec-at-loc", 3},
    {"put-inside-loc", 2},
    {"put-ontop-loc", 2},
    {"put-inside-rec-at-loc", 3},
    {"put-ontop-rec-at-loc", 3},
    {"open-loc", 1},
    {"close-loc", 1},
    {"open-rec-at-loc", 2},
    {"close-rec-at-loc", 2},
    {"toggle-on-loc", 1},
    {"toggle-off-loc", 1},
    {"toggle-on-obj-at-loc", 2},
    {"toggle-off-obj-at-loc", 2},
    {"heat-obj", 2},
    {"cool-obj", 2},
    {"soak-obj", 2},
    {"slice-obj", 3},
    {"clean-obj-at-loc", 3},
    {"clean-loc", 2},
    {"bring-to-human", 1},
    {"take-from-human", 1},
    {"examine", 0},
    {"inventory", 0},
}};

bool is_knife(const Universe& u, ObjectIndex i) { return is_knife_category(u.category_of(i).name); }
bool is_cleaner(const Universe& u, ObjectIndex i) {
  return is_cleaning_tool_category(u.category_of(i).name);
}

// Station locations for the attribute-changing verbs.
bool station_ok(const Universe& u, Schema s, ObjectIndex loc) {
  const auto& name = u.category_of(loc).name;
  switch (s) {
    case Schema::heat_obj: return is_heater_category(name);
    case Schema::cool_obj: return name == "refrigerator";
    case Schema::soak_obj: return name == "sink";
    default: return false;
  }
}

Flag station_flag(Schema s) {
  switch (s) {
    case Schema::heat_obj: return Flag::cooked;
    case Schema::cool_obj: return Flag::frozen;
    default: return Flag::soaked;
  }
}

// Access to a receptacle standing directly at loc (its own lid not considered).
bool rec_reachable(const WorldState& s, ObjectIndex rec, ObjectIndex loc) {
  const auto& st = s.at(rec);
  if (st.holder != loc) return false;
  return !(st.relation == Relation::in && s.closed_container(loc));
}

void check_index(const Universe& u, ObjectIndex i) {
  if (i < 0 || static_cast<std::size_t>(i) >= u.size()) {
    throw UnknownObjectError("unknown object index " + std::to_string(i));
  }
}

}  // namespace

std::string_view schema_name(Schema s) { return kSchemas[static_cast<int>(s)].name; }

std::optional<Schema> parse_schema(std::string_view name) {
  for (int i = 0; i < kSchemaCount; ++i) {
    if (kSchemas[i].name == name) return static_cast<Schema>(i);
  }
  return std::nullopt;
}

int schema_arity(Schema s) { return kSchemas[static_cast<int>(s)].arity; }

bool is_meta_schema(Schema s) { return s == Schema::examine || s == Schema::inventory; }

GroundedAction make_action(Schema s, Agent a, std::initializer_list<ObjectIndex> args) {
  GroundedAction act;
  act.schema = s;
  act.agent = a;
  int i = 0;
  for (auto v : args) act.args[static_cast<std::size_t>(i++)] = v;
  if (i != schema_arity(s)) throw std::invalid_argument("wrong arity for " + std::string(schema_name(s)));
  return act;
}

std::string action_key(const Universe& u, const GroundedAction& a) {
  std::string out(schema_name(a.schema));
  out += ' ';
  out += agent_name(a.agent);
  for (int i = 0; i < schema_arity(a.schema); ++i) {
    out += ' ';
    out += u.object(a.args[static_cast<std::size_t>(i)]).id;
  }
  return out;
}

GroundedAction parse_action_key(const Universe& u, std::string_view key) {
  std::istringstream in{std::string(key)};
  std::string name, agent;
  in >> name >> agent;
  auto schema = parse_schema(name);
  if (!schema) throw std::invalid_argument("unknown schema in action key: " + name);
  GroundedAction a;
  a.schema = *schema;
  if (agent == "human") a.agent = Agent::human;
  else if (agent == "robot") a.agent = Agent::robot;
  else throw std::invalid_argument("unknown agent in action key: " + agent);
  for (int i = 0; i < schema_arity(*schema); ++i) {
    std::string id;
    if (!(in >> id)) throw std::invalid_argument("truncated action key");
    a.args[static_cast<std::size_t>(i)] = u.index_of(id);
  }
  return a;
}

std::optional<std::string> check_action(const WorldState& s, const GroundedAction& a) {
  const auto& u = s.universe();
  const int n = schema_arity(a.schema);
  for (int i = 0; i < n; ++i) check_index(u, a.args[static_cast<std::size_t>(i)]);
  const Agent ag = a.agent;
  const ObjectIndex here = s.agent_location(ag);
  const ObjectIndex held = s.holding(ag);
  const auto x = a.args[0], y = a.args[1], z = a.args[2];
  auto fail = [](std::string msg) { return std::optional<std::string>(std::move(msg)); };

  switch (a.schema) {
    case Schema::move:
      if (!u.is_location(x) || !u.is_location(y)) return fail("move endpoints must be locations");
      if (x != here) return fail("agent is not at the origin");
      if (x == y) return fail("destination equals origin");
      return std::nullopt;

    case Schema::pick_up_at_loc:
      if (!u.is_location(y)) return fail("not a location");
      if (here != y) return fail("agent is not at the location");
      if (held != kNone) return fail("hand is not empty");
      if (!u.is_movable(x)) return fail("object is not movable");
      if (s.at(x).holder != y) return fail("object is not directly at the location");
      if (s.at(x).relation == Relation::in && s.closed_container(y)) return fail("location is closed");
      return std::nullopt;

    case Schema::pick_up_from_rec_at_loc:
      if (!u.is_location(z) || !u.is_receptacle(y)) return fail("bad argument types");
      if (here != z) return fail("agent is not at the location");
      if (held != kNone) return fail("hand is not empty");
      if (s.at(x).holder != y) return fail("object is not in/on the receptacle");
      if (!rec_reachable(s, y, z)) return fail("receptacle is not reachable at the location");
      if (s.at(x).relation == Relation::in && s.closed_container(y)) return fail("receptacle is closed");
      return std::nullopt;

    case Schema::put_inside_loc:
    case Schema::put_ontop_loc: {
      const bool inside = a.schema == Schema::put_inside_loc;
      if (!u.is_location(y)) return fail("not a location");
      if (here != y) return fail("agent is not at the location");
      if (held != x) return fail("agent is not holding the object");
      if (!u.has_meta(y, inside ? Meta::has_inside : Meta::has_ontop)) return fail("location cannot hold it that way");
      if (inside && s.closed_container(y)) return fail("location is closed");
      return std::nullopt;
    }

    case Schema::put_inside_rec_at_loc:
    case Schema::put_ontop_rec_at_loc: {
      const bool inside = a.schema == Schema::put_inside_rec_at_loc;
      if (!u.is_location(z) || !u.is_receptacle(y)) return fail("bad argument types");
      if (here != z) return fail("agent is not at the location");
      if (held != x) return fail("agent is not holding the object");
      if (u.is_receptacle(x)) return fail("receptacles only rest on locations");
      if (!rec_reachable(s, y, z)) return fail("receptacle is not reachable at the location");
      if (!u.has_meta(y, inside ? Meta::has_inside : Meta::has_ontop)) return fail("receptacle cannot hold it that way");
      if (inside && s.closed_container(y)) return fail("receptacle is closed");
      return std::nullopt;
    }

    case Schema::open_loc:
    case Schema::close_loc: {
      const bool open = a.schema == Schema::open_loc;
      if (!u.is_location(x)) return fail("not a location");
      if (here != x) return fail("agent is not at the location");
      if (!u.has_meta(x, Meta::openable)) return fail("not openable");
      if (s.flag(x, Flag::open) == open) return fail(open ? "already open" : "already closed");
      return std::nullopt;
    }

    case Schema::open_rec_at_loc:
    case Schema::close_rec_at_loc: {
      const bool open = a.schema == Schema::open_rec_at_loc;
      if (!u.is_receptacle(x) || !u.is_location(y)) return fail("bad argument types");
      if (here != y) return fail("agent is not at the location");
      if (!u.has_meta(x, Meta::openable)) return fail("not openable");
      if (!rec_reachable(s, x, y)) return fail("receptacle is not reachable at the location");
      if (s.flag(x, Flag::open) == open) return fail(open ? "already open" : "already closed");
      return std::nullopt;
    }

    case Schema::toggle_on_loc:
    case Schema::toggle_off_loc: {
      const bool on = a.schema == Schema::toggle_on_loc;
      if (!u.is_location(x)) return fail("not a location");
      if (here != x) return fail("agent is not at the location");
      if (!u.has_meta(x, Meta::toggleable)) return fail("not toggleable");
      if (s.flag(x, Flag::toggled) == on) return fail(on ? "already on" : "already off");
      return std::nullopt;
    }

    case Schema::toggle_on_obj_at_loc:
    case Schema::toggle_off_obj_at_loc: {
      const bool on = a.schema == Schema::toggle_on_obj_at_loc;
      if (!u.is_location(y)) return fail("not a location");
      if (here != y) return fail("agent is not at the location");
      if (!u.has_meta(x, Meta::toggleable)) return fail("not toggleable");
      if (!s.accessible_at(x, y)) return fail("object is not reachable at the location");
      if (s.flag(x, Flag::toggled) == on) return fail(on ? "already on" : "already off");
      return std::nullopt;
    }

    case Schema::heat_obj:
    case Schema::cool_obj:
    case Schema::soak_obj: {
      if (!u.is_location(y)) return fail("not a location");
      if (here != y) return fail("agent is not at the location");
      if (!station_ok(u, a.schema, y)) return fail("wrong station for this verb");
      const Flag f = station_flag(a.schema);
      if (!u.has_meta(x, flag_meta(f))) return fail("object does not support this verb");
      if (s.flag(x, f)) return fail("already done");
      if (held != x && !s.accessible_at(x, y)) return fail("object is not reachable at the location");
      return std::nullopt;
    }

    case Schema::slice_obj:
      if (!u.is_location(z)) return fail("not a location");
      if (here != z) return fail("agent is not at the location");
      if (held != y || !is_knife(u, y)) return fail("agent must hold a knife");
      if (!u.has_meta(x, Meta::sliceable)) return fail("not sliceable");
      if (s.flag(x, Flag::sliced)) return fail("already sliced");
      if (!s.accessible_at(x, z)) return fail("object is not reachable at the location");
      return std::nullopt;

    case Schema::clean_obj_at_loc:
      if (!u.is_location(z)) return fail("not a location");
      if (here != z) return fail("agent is not at the location");
      if (held != y || !is_cleaner(u, y)) return fail("agent must hold a cleaning tool");
      if (x == y) return fail("cannot clean the tool with itself");
      if (!s.flag(x, Flag::dusty) && !s.flag(x, Flag::stained)) return fail("already clean");
      if (!s.accessible_at(x, z)) return fail("object is not reachable at the location");
      return std::nullopt;

    case Schema::clean_loc:
      if (!u.is_location(y)) return fail("not a location");
      if (here != y) return fail("agent is not at the location");
      if (held != x || !is_cleaner(u, x)) return fail("agent must hold a cleaning tool");
      if (!s.flag(y, Flag::dusty) && !s.flag(y, Flag::stained)) return fail("already clean");
      return std::nullopt;

    case Schema::bring_to_human:
      if (ag != Agent::robot) return fail("only the robot can bring objects to the human");
      if (held != x) return fail("robot is not holding the object");
      if (here != s.agent_location(Agent::human)) return fail("robot is not with the human");
      if (s.holding(Agent::human) != kNone) return fail("human hand is not empty");
      return std::nullopt;

    case Schema::take_from_human:
      if (ag != Agent::robot) return fail("only the robot can take objects from the human");
      if (s.holding(Agent::human) != x) return fail("human is not holding the object");
      if (held != kNone) return fail("robot hand is not empty");
      if (here != s.agent_location(Agent::human)) return fail("robot is not with the human");
      return std::nullopt;

    case Schema::examine:
    case Schema::inventory:
      return std::nullopt;
  }
  return fail("unknown schema");
}

bool applicable(const WorldState& s, const GroundedAction& a) { return !check_action(s, a).has_value(); }

void apply_in_place(WorldState& s, const GroundedAction& a) {
  const Agent ag = a.agent;
  const auto x = a.args[0], y = a.args[1];
  switch (a.schema) {
    case Schema::move: s.set_agent_location(ag, y); break;
    case Schema::pick_up_at_loc:
    case Schema::pick_up_from_rec_at_loc: s.give_to(ag, x); break;
    case Schema::put_inside_loc:
    case Schema::put_inside_rec_at_loc: s.place(x, Relation::in, y); break;
    case Schema::put_ontop_loc:
    case Schema::put_ontop_rec_at_loc: s.place(x, Relation::on, y); break;
    case Schema::open_loc:
    case Schema::open_rec_at_loc: s.set_flag(x, Flag::open, true); break;
    case Schema::close_loc:
    case Schema::close_rec_at_loc: s.set_flag(x, Flag::open, false); break;
    case Schema::toggle_on_loc:
    case Schema::toggle_on_obj_at_loc: s.set_flag(x, Flag::toggled, true); break;
    case Schema::toggle_off_loc:
    case Schema::toggle_off_obj_at_loc: s.set_flag(x, Flag::toggled, false); break;
    case Schema::heat_obj: s.set_flag(x, Flag::cooked, true); break;
    case Schema::cool_obj: s.set_flag(x, Flag::frozen, true); break;
    case Schema::soak_obj: s.set_flag(x, Flag::soaked, true); break;
    case Schema::slice_obj: s.set_flag(x, Flag::sliced, true); break;
    case Schema::clean_obj_at_loc:
      s.set_flag(x, Flag::dusty, false);
      s.set_flag(x, Flag::stained, false);
      break;
    case Schema::clean_loc:
      s.set_flag(y, Flag::dusty, false);
      s.set_flag(y, Flag::stained, false);
      break;
    case Schema::bring_to_human: s.give_to(Agent::human, x); break;
    case Schema::take_from_human: s.give_to(Agent::robot, x); break;
    case Schema::examine:
    case Schema::inventory: break;
  }
}

WorldState apply(const WorldState& s, const GroundedAction& a) {
  if (auto why = check_action(s, a)) {
    throw PreconditionError(action_key(s.universe(), a) + ": " + *why);
  }
  WorldState next = s;
  apply_in_place(next, a);
  return next;
}

double action_cost(const WorldState&, const GroundedAction& a) { return is_meta_schema(a.schema) ? 0.0 : 1.0; }

void enumerate_actions(const WorldState& s, Agent agent, std::span<const ObjectIndex> pool,
                       bool include_meta, std::vector<GroundedAction>& out) {
  const auto& u = s.universe();
  const ObjectIndex L = s.agent_location(agent);
  const ObjectIndex held = s.holding(agent);
  const bool L_closed = s.closed_container(L);
  auto emit = [&](Schema sc, ObjectIndex a0 = kNone, ObjectIndex a1 = kNone, ObjectIndex a2 = kNone) {
    GroundedAction act;
    act.schema = sc;
    act.agent = agent;
    act.args = {a0, a1, a2};
    out.push_back(act);
  };
  // Receptacle standing at L and reachable (lid aside).
  auto rec_here = [&](ObjectIndex r) {
    const auto& st = s.at(r);
    return st.holder == L && !(st.relation == Relation::in && L_closed);
  };

  for (ObjectIndex loc : u.locations()) {
    if (loc != L) emit(Schema::move, L, loc);
  }

  const ObjectIndex human_held = s.holding(Agent::human);
  const bool with_human = agent == Agent::robot && s.agent_location(Agent::human) == L;

  if (held == kNone) {
    for (ObjectIndex o : pool) {
      if (!u.is_movable(o)) continue;
      const auto& st = s.at(o);
      if (st.holder == L) {
        if (!(st.relation == Relation::in && L_closed)) emit(Schema::pick_up_at_loc, o, L);
      } else if (st.holder >= 0 && u.is_receptacle(st.holder) && rec_here(st.holder)) {
        if (!(st.relation == Relation::in && s.closed_container(st.holder))) {
          emit(Schema::pick_up_from_rec_at_loc, o, st.holder, L);
        }
      }
    }
    if (with_human && human_held != kNone) emit(Schema::take_from_human, human_held);
  } else {
    if (u.has_meta(L, Meta::has_inside) && !L_closed) emit(Schema::put_inside_loc, held, L);
    if (u.has_meta(L, Meta::has_ontop)) emit(Schema::put_ontop_loc, held, L);
    if (!u.is_receptacle(held)) {
      for (ObjectIndex r : pool) {
        if (r == held || !u.is_receptacle(r) || !rec_here(r)) continue;
        if (u.has_meta(r, Meta::has_inside) && !s.closed_container(r)) emit(Schema::put_inside_rec_at_loc, held, r, L);
        if (u.has_meta(r, Meta::has_ontop)) emit(Schema::put_ontop_rec_at_loc, held, r, L);
      }
    }
    if (with_human && human_held == kNone) emit(Schema::bring_to_human, held);
    if (is_knife(u, held)) {
      for (ObjectIndex o : pool) {
        if (u.has_meta(o, Meta::sliceable) && !s.flag(o, Flag::sliced) && s.accessible_at(o, L)) {
          emit(Schema::slice_obj, o, held, L);
        }
      }
    }
    if (is_cleaner(u, held)) {
      for (ObjectIndex o : pool) {
        if (o == held || u.is_location(o)) continue;
        if ((s.flag(o, Flag::dusty) || s.flag(o, Flag::stained)) && s.accessible_at(o, L)) {
          emit(Schema::clean_obj_at_loc, o, held, L);
        }
      }
      if (s.flag(L, Flag::dusty) || s.flag(L, Flag::stained)) emit(Schema::clean_loc, held, L);
    }
  }

  if (u.has_meta(L, Meta::openable)) emit(s.flag(L, Flag::open) ? Schema::close_loc : Schema::open_loc, L);
  for (ObjectIndex r : pool) {
    if (!u.is_receptacle(r) || !u.has_meta(r, Meta::openable) || !rec_here(r)) continue;
    emit(s.flag(r, Flag::open) ? Schema::close_rec_at_loc : Schema::open_rec_at_loc, r, L);
  }
  if (u.has_meta(L, Meta::toggleable)) {
    emit(s.flag(L, Flag::toggled) ? Schema::toggle_off_loc : Schema::toggle_on_loc, L);
  }
  for (ObjectIndex o : pool) {
    if (u.is_location(o) || !u.has_meta(o, Meta::toggleable) || !s.accessible_at(o, L)) continue;
    emit(s.flag(o, Flag::toggled) ? Schema::toggle_off_obj_at_loc : Schema::toggle_on_obj_at_loc, o, L);
  }

  for (Schema sc : {Schema::heat_obj, Schema::cool_obj, Schema::soak_obj}) {
    if (!station_ok(u, sc, L)) continue;
    const Flag f = station_flag(sc);
    auto eligible = [&](ObjectIndex o) { return u.has_meta(o, flag_meta(f)) && !s.flag(o, f); };
    if (held != kNone && eligible(held)) emit(sc, held, L);
    for (ObjectIndex o : pool) {
      if (o == held || u.is_location(o)) continue;
      if (eligible(o) && s.accessible_at(o, L)) emit(sc, o, L);
    }
  }

  if (include_meta) {
    emit(Schema::examine);
    emit(Schema::inventory);
  }
}

std::vector<GroundedAction> valid_actions(const WorldState& s, Agent agent) {
  const auto& u = s.universe();
  std::vector<ObjectIndex> pool(u.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<ObjectIndex>(i);
  std::vector<GroundedAction> out;
  enumerate_actions(s, agent, pool, true, out);
  auto key = [&](const GroundedAction& a) {
    std::array<std::string_view, 3> ids{};
    for (int i = 0; i < schema_arity(a.schema); ++i) ids[static_cast<std::size_t>(i)] = u.object(a.args[static_cast<std::size_t>(i)]).id;
    return std::tuple(schema_name(a.schema), ids[0], ids[1], ids[2]);
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

}  // namespace pragworld
