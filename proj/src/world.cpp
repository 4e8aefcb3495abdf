#include "pragworld/world.hpp"

#include <string>

namespace pragworld {

std::string_view agent_name(Agent a) { return a == Agent::human ? "human" : "robot"; }

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::in: return "in";
    case Relation::on: return "on";
    default: return "none";
  }
}

Universe::Universe(std::vector<ObjectInstance> objects) : objects_(std::move(objects)) {
  const auto& cat = Catalog::instance();
  if (objects_.size() > 4000) throw std::invalid_argument("universe too large");
  by_category_.resize(cat.categories().size());
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const auto& o = objects_[i];
    const auto idx = static_cast<ObjectIndex>(i);
    if (!by_id_.emplace(o.id, idx).second) throw std::invalid_argument("duplicate object id " + o.id);
    const auto& spec = cat.category(o.category);
    if ((o.size != Size::none) != spec.meta.has(Meta::has_size)) {
      throw std::invalid_argument("size/has-size mismatch for " + o.id);
    }
    if ((o.color != Color::none) != spec.meta.has(Meta::has_color)) {
      throw std::invalid_argument("color/has-color mismatch for " + o.id);
    }
    by_category_[o.category].push_back(idx);
    if (spec.cls == ObjectClass::location) locations_.push_back(idx);
  }
}

const CategorySpec& Universe::category_of(ObjectIndex i) const {
  return Catalog::instance().category(object(i).category);
}

std::optional<ObjectIndex> Universe::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

ObjectIndex Universe::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw UnknownObjectError("unknown object id: " + std::string(id));
}

const std::vector<ObjectIndex>& Universe::instances_of(CategoryId c) const { return by_category_.at(c); }

ObjectIndex Universe::location_named(std::string_view name) const {
  auto id = Catalog::instance().find_category(name);
  if (!id || by_category_[*id].empty()) return kNone;
  return by_category_[*id].front();
}

WorldState::WorldState(std::shared_ptr<const Universe> universe)
    : universe_(std::move(universe)), objects_(universe_->size()) {}

void WorldState::set_flag(ObjectIndex i, Flag f, bool v) {
  if (v && !universe_->has_meta(i, flag_meta(f))) {
    throw std::invalid_argument(std::string("cannot set ") + std::string(flag_name(f)) + " on " +
                                universe_->object(i).id);
  }
  at(i).set_flag(f, v);
}

void WorldState::place(ObjectIndex obj, Relation rel, ObjectIndex holder) {
  const auto& u = *universe_;
  if (!u.is_movable(obj)) throw std::invalid_argument("cannot place a location");
  if (rel == Relation::in && !u.has_meta(holder, Meta::has_inside)) {
    throw std::invalid_argument(u.object(holder).id + " has no inside");
  }
  if (rel == Relation::on && !u.has_meta(holder, Meta::has_ontop)) {
    throw std::invalid_argument(u.object(holder).id + " has no top");
  }
  if (u.is_receptacle(holder) && u.is_receptacle(obj)) {
    throw std::invalid_argument("receptacles only rest on locations");
  }
  auto& st = at(obj);
  if (st.holder == kHeldByHuman) holding_[0] = kNone;
  if (st.holder == kHeldByRobot) holding_[1] = kNone;
  st.holder = holder;
  st.relation = rel;
}

void WorldState::give_to(Agent a, ObjectIndex obj) {
  auto& st = at(obj);
  if (st.holder == kHeldByHuman) holding_[0] = kNone;
  if (st.holder == kHeldByRobot) holding_[1] = kNone;
  st.holder = held_marker(a);
  st.relation = Relation::none;
  holding_[static_cast<int>(a)] = obj;
}

void WorldState::clear_holding(Agent a) { holding_[static_cast<int>(a)] = kNone; }

ObjectIndex WorldState::resolved_location(ObjectIndex obj) const {
  ObjectIndex cur = obj;
  for (int depth = 0; depth < 4; ++depth) {
    if (universe_->is_location(cur)) return cur;
    const auto h = at(cur).holder;
    if (h == kHeldByHuman) return agent_location(Agent::human);
    if (h == kHeldByRobot) return agent_location(Agent::robot);
    if (h == kNone) return kNone;
    cur = h;
  }
  return kNone;
}

bool WorldState::directly_in(ObjectIndex obj, ObjectIndex holder) const {
  const auto& s = at(obj);
  return s.holder == holder && s.relation == Relation::in;
}

bool WorldState::directly_on(ObjectIndex obj, ObjectIndex holder) const {
  const auto& s = at(obj);
  return s.holder == holder && s.relation == Relation::on;
}

bool WorldState::closed_container(ObjectIndex holder) const {
  return universe_->has_meta(holder, Meta::openable) && !flag(holder, Flag::open);
}

bool WorldState::accessible_at(ObjectIndex obj, ObjectIndex loc) const {
  const auto& s = at(obj);
  if (s.holder == loc) {
    return !(s.relation == Relation::in && closed_container(loc));
  }
  if (s.holder < 0 || !universe_->is_receptacle(s.holder)) return false;
  const auto& r = at(s.holder);
  if (r.holder != loc) return false;
  if (s.relation == Relation::in && closed_container(s.holder)) return false;
  return !(r.relation == Relation::in && closed_container(loc));
}

bool WorldState::operator==(const WorldState& other) const {
  return universe_ == other.universe_ && objects_ == other.objects_ &&
         agent_loc_ == other.agent_loc_ && holding_ == other.holding_;
}

void WorldState::validate() const {
  const auto& u = *universe_;
  for (int a = 0; a < 2; ++a) {
    const auto loc = agent_loc_[a];
    if (loc < 0 || !u.is_location(loc)) throw std::logic_error("agent not at a location");
    const auto h = holding_[a];
    if (h != kNone && at(h).holder != held_marker(static_cast<Agent>(a))) {
      throw std::logic_error("holding table inconsistent");
    }
  }
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const auto idx = static_cast<ObjectIndex>(i);
    const auto& s = objects_[i];
    const auto& id = u.object(idx).id;
    for (int f = 0; f < kFlagCount; ++f) {
      if (s.flag(static_cast<Flag>(f)) && !u.has_meta(idx, flag_meta(static_cast<Flag>(f)))) {
        throw std::logic_error("flag without meta-property on " + id);
      }
    }
    if (u.is_location(idx)) {
      if (s.holder != kNone) throw std::logic_error("location has a holder: " + id);
      continue;
    }
    if (s.holder == kHeldByHuman || s.holder == kHeldByRobot) {
      const Agent a = s.holder == kHeldByHuman ? Agent::human : Agent::robot;
      if (holding(a) != idx) throw std::logic_error("held object not in agent hand: " + id);
      continue;
    }
    if (s.holder < 0 || static_cast<std::size_t>(s.holder) >= objects_.size()) {
      throw std::logic_error("movable without position: " + id);
    }
    const Meta need = s.relation == Relation::in ? Meta::has_inside : Meta::has_ontop;
    if (s.relation == Relation::none || !u.has_meta(s.holder, need)) {
      throw std::logic_error("relation does not match holder meta: " + id);
    }
    if (u.is_receptacle(s.holder) && u.is_receptacle(idx)) {
      throw std::logic_error("receptacle inside receptacle: " + id);
    }
    if (!u.is_location(s.holder) && !u.is_receptacle(s.holder)) {
      throw std::logic_error("holder is neither location nor receptacle: " + id);
    }
  }
}

}  // namespace pragworld
