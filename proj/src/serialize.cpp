#include "pragworld/serialize.hpp"

#include <cstdio>

#include "pragworld/rng.hpp"

namespace pragworld {

namespace {

Json holder_json(const Universe& u, ObjectIndex h) {
  if (h == kHeldByHuman) return "human";
  if (h == kHeldByRobot) return "robot";
  if (h == kNone) return nullptr;
  return u.object(h).id;
}

}  // namespace

Json state_to_json(const WorldState& s) {
  const auto& u = s.universe();
  Json objects = Json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto idx = static_cast<ObjectIndex>(i);
    const auto& o = u.object(idx);
    const auto& st = s.at(idx);
    Json flags = Json::array();
    for (int f = 0; f < kFlagCount; ++f) {
      if (st.flag(static_cast<Flag>(f))) flags.push_back(flag_name(static_cast<Flag>(f)));
    }
    Json rec = {{"id", o.id},
                {"category", u.category_of(idx).name},
                {"flags", flags},
                {"holder", holder_json(u, st.holder)},
                {"relation", st.relation == Relation::none ? Json(nullptr) : Json(relation_name(st.relation))}};
    if (o.size != Size::none) rec["size"] = size_name(o.size);
    if (o.color != Color::none) rec["color"] = color_name(o.color);
    objects.push_back(std::move(rec));
  }
  Json agents;
  for (Agent a : {Agent::human, Agent::robot}) {
    const auto h = s.holding(a);
    agents[std::string(agent_name(a))] = {{"location", u.object(s.agent_location(a)).id},
                                          {"holding", h == kNone ? Json(nullptr) : Json(u.object(h).id)}};
  }
  return {{"objects", objects}, {"agents", agents}};
}

WorldState state_from_json(const Json& j) {
  const auto& cat = Catalog::instance();
  std::vector<ObjectInstance> objs;
  for (const auto& rec : j.at("objects")) {
    ObjectInstance o;
    o.id = rec.at("id").get<std::string>();
    o.category = cat.category_id(rec.at("category").get<std::string>());
    if (rec.contains("size")) {
      auto sz = parse_size(rec["size"].get<std::string>());
      if (!sz) throw std::invalid_argument("bad size for " + o.id);
      o.size = *sz;
    }
    if (rec.contains("color")) {
      auto c = parse_color(rec["color"].get<std::string>());
      if (!c) throw std::invalid_argument("bad color for " + o.id);
      o.color = *c;
    }
    objs.push_back(std::move(o));
  }
  return state_from_json(j, std::make_shared<const Universe>(std::move(objs)));
}

WorldState state_from_json(const Json& j, std::shared_ptr<const Universe> universe) {
  WorldState s(universe);
  const auto& u = *universe;
  const auto& objects = j.at("objects");
  if (objects.size() != u.size()) throw std::invalid_argument("object count mismatch");
  for (const auto& rec : objects) {
    const auto idx = u.index_of(rec.at("id").get<std::string>());
    auto& st = s.at(idx);
    st.flags = 0;
    for (const auto& f : rec.at("flags")) {
      auto flag = parse_flag(f.get<std::string>());
      if (!flag) throw std::invalid_argument("bad flag");
      s.set_flag(idx, *flag, true);
    }
    const auto& h = rec.at("holder");
    if (h.is_null()) {
      st.holder = kNone;
    } else {
      const auto hs = h.get<std::string>();
      st.holder = hs == "human" ? kHeldByHuman : hs == "robot" ? kHeldByRobot : u.index_of(hs);
    }
    const auto& rel = rec.at("relation");
    st.relation = rel.is_null() ? Relation::none : rel.get<std::string>() == "in" ? Relation::in : Relation::on;
  }
  for (Agent a : {Agent::human, Agent::robot}) {
    const auto& ag = j.at("agents").at(std::string(agent_name(a)));
    s.set_agent_location(a, u.index_of(ag.at("location").get<std::string>()));
    if (!ag.at("holding").is_null()) {
      const auto h = u.index_of(ag.at("holding").get<std::string>());
      s.give_to(a, h);
    } else {
      s.clear_holding(a);
    }
  }
  s.validate();
  return s;
}

std::string canonical_string(const WorldState& s) { return state_to_json(s).dump(); }

std::string state_digest(const WorldState& s) {
  const auto h = hash_tag(canonical_string(s));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json action_to_json(const Universe& u, const GroundedAction& a) { return action_key(u, a); }

GroundedAction action_from_json(const Universe& u, const Json& j) {
  return parse_action_key(u, j.get<std::string>());
}

}  // namespace pragworld
