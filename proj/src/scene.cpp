#include "pragworld/scene.hpp"

#include <stdexcept>

#include "pragworld/rng.hpp"

namespace pragworld {

void validate(const SceneConfig& config) {
  if (config.max_instances_per_category < 1) throw std::invalid_argument("max_instances_per_category must be >= 1");
  if (!(config.stained_dusty_probability >= 0.0 && config.stained_dusty_probability <= 1.0)) {
    throw std::invalid_argument("stained_dusty_probability must lie in [0,1]");
  }
}

std::string make_object_id(std::string_view category, int k) {
  std::string id(category);
  for (auto& c : id) {
    if (c == ' ') c = '_';
  }
  return id + "#" + std::to_string(k);
}

WorldState sample_scene(const SceneConfig& config) {
  validate(config);
  const auto& cat = Catalog::instance();
  const Rng root(config.rng_seed);
  const int maxn = config.max_instances_per_category;

  // Instance counts. Every movable category draws from {0..max}; a subclass left empty gets
  // one of its categories redrawn from {1..max}.
  std::vector<int> counts(cat.categories().size(), 0);
  {
    Rng rng = root.split("counts");
    for (std::size_t c = 0; c < counts.size(); ++c) {
      counts[c] = cat.categories()[c].cls == ObjectClass::location ? 1 : static_cast<int>(rng.uniform_int(0, maxn));
    }
    for (const auto& sub : cat.subclasses()) {
      if (sub.cls == ObjectClass::location) continue;
      bool any = false;
      for (auto c : sub.categories) any = any || counts[c] > 0;
      if (!any) counts[rng.pick(sub.categories)] = static_cast<int>(rng.uniform_int(1, maxn));
    }
  }

  Rng attr_rng = root.split("static-attributes");
  std::vector<ObjectInstance> objects;
  for (int pass = 0; pass < 2; ++pass) {  // locations first, then movables
    for (std::size_t c = 0; c < counts.size(); ++c) {
      const auto& spec = cat.categories()[c];
      if ((spec.cls == ObjectClass::location) != (pass == 0)) continue;
      for (int k = 1; k <= counts[c]; ++k) {
        ObjectInstance o;
        o.id = make_object_id(spec.name, k);
        o.category = static_cast<CategoryId>(c);
        if (spec.meta.has(Meta::has_size)) o.size = attr_rng.below(2) == 0 ? Size::large : Size::small;
        if (spec.meta.has(Meta::has_color)) o.color = static_cast<Color>(1 + attr_rng.below(3));
        objects.push_back(std::move(o));
      }
    }
  }
  auto universe = std::make_shared<const Universe>(std::move(objects));
  const auto& u = *universe;
  WorldState s(universe);

  // Positions: receptacles first so that they can host ordinary objects.
  Rng pos_rng = root.split("positions");
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto idx = static_cast<ObjectIndex>(i);
      if (u.is_location(idx) || u.is_receptacle(idx) != (pass == 0)) continue;
      const auto& sub = cat.subclass(u.category_of(idx).subclass);
      std::vector<CategoryId> options;
      for (auto c : sub.position_locations) options.push_back(c);
      for (auto rs : sub.position_receptacles) {
        for (auto c : cat.subclass(rs).categories) {
          if (!u.instances_of(c).empty()) options.push_back(c);
        }
      }
      if (options.empty()) throw std::logic_error("no valid position for " + u.object(idx).id);
      const CategoryId hc = pos_rng.pick(options);
      const ObjectIndex holder = pos_rng.pick(u.instances_of(hc));
      s.place(idx, u.has_meta(holder, Meta::has_inside) ? Relation::in : Relation::on, holder);
    }
  }

  // Dynamic attributes.
  Rng dyn_rng = root.split("dynamic-attributes");
  const double p = config.stained_dusty_probability;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto idx = static_cast<ObjectIndex>(i);
    const auto& spec = u.category_of(idx);
    if (spec.name == "refrigerator") s.set_flag(idx, Flag::toggled, true);
    if (u.is_movable(idx)) {
      const auto& where = u.category_of(s.resolved_location(idx)).name;
      if (spec.meta.has(Meta::cookable) && is_heater_category(where)) s.set_flag(idx, Flag::cooked, true);
      if (spec.meta.has(Meta::freezable) && where == "refrigerator") s.set_flag(idx, Flag::frozen, true);
    }
    if (spec.meta.has(Meta::stainable) && dyn_rng.bernoulli(p)) s.set_flag(idx, Flag::stained, true);
    if (spec.meta.has(Meta::dustyable) && dyn_rng.bernoulli(p)) s.set_flag(idx, Flag::dusty, true);
  }

  const auto floor = u.location_named("floor");
  s.set_agent_location(Agent::human, floor);
  s.set_agent_location(Agent::robot, floor);
  s.validate();
  return s;
}

}  // namespace pragworld
