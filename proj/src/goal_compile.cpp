#include "pragworld/goal_compile.hpp"

#include <unordered_map>

#include "pragworld/catalog.hpp"

namespace pragworld {

namespace {
constexpr std::int32_t kTrue = 0;
constexpr std::int32_t kFalse = 1;

using Env = std::vector<std::pair<std::string_view, ObjectIndex>>;

std::uint64_t literal_key(const Literal& l) {
  return (static_cast<std::uint64_t>(l.kind) << 56) | (static_cast<std::uint64_t>(static_cast<std::uint16_t>(l.x)) << 40) |
         (static_cast<std::uint64_t>(static_cast<std::uint16_t>(l.y)) << 24) |
         (static_cast<std::uint64_t>(l.rel) << 16) | (static_cast<std::uint64_t>(l.flag) << 8) |
         static_cast<std::uint64_t>(l.value);
}

// Type tests on `var` that restrict the useful domain of a quantifier over `var`.
const Formula* guard_for(const Formula& quant) {
  const Formula* body = quant.children[0].get();
  while (body->kind == quant.kind) body = body->children[0].get();
  auto is_guard = [&](const Formula& f) {
    return f.kind == FormulaKind::type_test && f.args.size() == 1 && f.args[0] == quant.var;
  };
  if (quant.kind == FormulaKind::exists && body->kind == FormulaKind::conj) {
    for (const auto& c : body->children) {
      if (is_guard(*c)) return c.get();
    }
  }
  if (quant.kind == FormulaKind::forall && body->kind == FormulaKind::implies) {
    const auto& lhs = *body->children[0];
    if (is_guard(lhs)) return &lhs;
    if (lhs.kind == FormulaKind::conj) {
      for (const auto& c : lhs.children) {
        if (is_guard(*c)) return c.get();
      }
    }
  }
  return nullptr;
}

}  // namespace

class GoalCompiler {
 public:
  explicit GoalCompiler(const Universe& u) : u_(u) {
    g_.nodes_.push_back(GoalNode{NodeKind::truth, -1, {}});
    g_.nodes_.push_back(GoalNode{NodeKind::falsity, -1, {}});
  }

  std::int32_t build(const Formula& f, Env& env, bool neg) {
    switch (f.kind) {
      case FormulaKind::negation: return build(*f.children[0], env, !neg);
      case FormulaKind::conj:
      case FormulaKind::disj: {
        const bool is_and = (f.kind == FormulaKind::conj) != neg;
        std::vector<std::int32_t> kids;
        for (const auto& c : f.children) {
          if (!push(kids, build(*c, env, neg), is_and)) return is_and ? kFalse : kTrue;
        }
        return combine(std::move(kids), is_and);
      }
      case FormulaKind::implies: {
        // a -> b  ==  ~a | b
        const bool is_and = neg;  // ~(a -> b) == a & ~b
        std::vector<std::int32_t> kids;
        if (!push(kids, build(*f.children[0], env, !neg), is_and)) return is_and ? kFalse : kTrue;
        if (!push(kids, build(*f.children[1], env, neg), is_and)) return is_and ? kFalse : kTrue;
        return combine(std::move(kids), is_and);
      }
      case FormulaKind::forall:
      case FormulaKind::exists: {
        const bool is_and = (f.kind == FormulaKind::forall) != neg;
        const Formula* guard = guard_for(f);
        std::vector<std::int32_t> kids;
        env.emplace_back(f.var, kNone);
        bool cut = false;
        for (std::size_t i = 0; i < u_.size() && !cut; ++i) {
          const auto obj = static_cast<ObjectIndex>(i);
          if (guard && !type_matches(u_.object(obj).category, guard->predicate)) continue;
          env.back().second = obj;
          cut = !push(kids, build(*f.children[0], env, neg), is_and);
        }
        env.pop_back();
        if (cut) return is_and ? kFalse : kTrue;
        return combine(std::move(kids), is_and);
      }
      case FormulaKind::type_test: {
        if (f.is_placeholder()) throw std::invalid_argument("uninstantiated placeholder " + f.predicate);
        const bool v = type_matches(u_.object(resolve(f.args[0], env)).category, f.predicate);
        return v != neg ? kTrue : kFalse;
      }
      case FormulaKind::flag_test: {
        const auto x = resolve(f.args[0], env);
        const Flag fl = *parse_flag(f.predicate);
        if (!u_.has_meta(x, flag_meta(fl))) return neg ? kTrue : kFalse;
        Literal l;
        l.kind = LitKind::flag;
        l.x = x;
        l.flag = fl;
        l.value = !neg;
        return lit_node(l);
      }
      case FormulaKind::relation: {
        const auto x = resolve(f.args[0], env);
        const auto y = resolve(f.args[1], env);
        const Relation rel = f.predicate == "in" ? Relation::in : Relation::on;
        const bool possible = x != y && u_.is_movable(x) &&
                              u_.has_meta(y, rel == Relation::in ? Meta::has_inside : Meta::has_ontop) &&
                              !(u_.is_receptacle(x) && !u_.is_location(y));
        if (!possible) return neg ? kTrue : kFalse;
        Literal l;
        l.kind = LitKind::position;
        l.x = x;
        l.y = y;
        l.rel = rel;
        l.value = !neg;
        return lit_node(l);
      }
    }
    throw std::logic_error("bad formula kind");
  }

  std::int32_t lit_node(const Literal& l) {
    const auto key = literal_key(l);
    auto it = lit_nodes_.find(key);
    if (it != lit_nodes_.end()) return it->second;
    const auto li = static_cast<std::int32_t>(g_.lits_.size());
    g_.lits_.push_back(l);
    const auto ni = static_cast<std::int32_t>(g_.nodes_.size());
    g_.nodes_.push_back(GoalNode{NodeKind::lit, li, {}});
    lit_nodes_.emplace(key, ni);
    return ni;
  }

  // Returns false when the child decides the connective (absorbing element).
  static bool push(std::vector<std::int32_t>& kids, std::int32_t k, bool is_and) {
    if (k == (is_and ? kFalse : kTrue)) return false;
    if (k == (is_and ? kTrue : kFalse)) return true;
    kids.push_back(k);
    return true;
  }

  std::int32_t combine(std::vector<std::int32_t> kids, bool is_and) {
    if (kids.empty()) return is_and ? kTrue : kFalse;
    if (kids.size() == 1) return kids.front();
    g_.nodes_.push_back(GoalNode{is_and ? NodeKind::conj : NodeKind::disj, -1, std::move(kids)});
    return static_cast<std::int32_t>(g_.nodes_.size() - 1);
  }

  ObjectIndex resolve(const std::string& name, const Env& env) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    if (name.find('#') != std::string::npos) return u_.index_of(name);
    throw FreeVariableError("free variable in goal: " + name);
  }

  CompiledGoal finish(std::int32_t root, std::vector<std::int32_t> conjuncts) {
    g_.root_ = root;
    g_.conjuncts_ = std::move(conjuncts);
    return std::move(g_);
  }

 private:
  const Universe& u_;
  CompiledGoal g_;
  std::unordered_map<std::uint64_t, std::int32_t> lit_nodes_;
};

CompiledGoal CompiledGoal::compile(const Universe& u, const Formula& f) {
  GoalCompiler c(u);
  Env env;
  const auto root = c.build(f, env, false);
  return c.finish(root, {root});
}

CompiledGoal CompiledGoal::compile(const Universe& u, const GroundGoal& g) {
  GoalCompiler c(u);
  std::vector<std::int32_t> roots, kids;
  bool is_false = false;
  for (const auto& b : g.blocks) {
    Env env;
    const auto r = c.build(*b.formula(), env, false);
    roots.push_back(r);
    if (!GoalCompiler::push(kids, r, true)) is_false = true;
  }
  const auto root = is_false ? kFalse : c.combine(kids, true);
  return c.finish(root, std::move(roots));
}

CompiledGoal CompiledGoal::any_of(const std::vector<Literal>& lits) {
  static const Universe empty(std::vector<ObjectInstance>{});
  GoalCompiler c(empty);
  std::vector<std::int32_t> kids;
  for (const auto& l : lits) kids.push_back(c.lit_node(l));
  const auto root = c.combine(kids, false);
  return c.finish(root, {root});
}

CompiledGoal CompiledGoal::any_of_all(const std::vector<std::vector<Literal>>& alternatives) {
  static const Universe empty(std::vector<ObjectInstance>{});
  GoalCompiler c(empty);
  std::vector<std::int32_t> kids;
  for (const auto& alt : alternatives) {
    std::vector<std::int32_t> conj;
    for (const auto& l : alt) conj.push_back(c.lit_node(l));
    kids.push_back(c.combine(conj, true));
  }
  const auto root = c.combine(kids, false);
  return c.finish(root, {root});
}

bool CompiledGoal::eval(const WorldState& s, std::int32_t node) const {
  const auto& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.kind) {
    case NodeKind::truth: return true;
    case NodeKind::falsity: return false;
    case NodeKind::lit: return lits_[static_cast<std::size_t>(n.lit)].holds(s);
    case NodeKind::conj:
      for (auto k : n.kids) {
        if (!eval(s, k)) return false;
      }
      return true;
    case NodeKind::disj:
      for (auto k : n.kids) {
        if (eval(s, k)) return true;
      }
      return false;
  }
  return false;
}

std::size_t CompiledGoal::satisfied_conjuncts(const WorldState& s) const {
  std::size_t n = 0;
  for (auto r : conjuncts_) n += eval(s, r) ? 1 : 0;
  return n;
}

}  // namespace pragworld
