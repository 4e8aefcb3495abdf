// Ground NNF form of a closed formula over a fixed universe.
#pragma once

#include <cstdint>
#include <vector>

#include "pragworld/formula.hpp"
#include "pragworld/goals.hpp"
#include "pragworld/world.hpp"

namespace pragworld {

enum class LitKind : std::uint8_t { position, flag, human_holds };

struct Literal {
  LitKind kind = LitKind::flag;
  ObjectIndex x = kNone;
  ObjectIndex y = kNone;  // holder for position literals
  Relation rel = Relation::none;
  Flag flag = Flag::open;
  bool value = true;

  bool holds(const WorldState& s) const {
    bool b = false;
    switch (kind) {
      case LitKind::position: {
        const auto& st = s.at(x);
        b = st.holder == y && st.relation == rel;
        break;
      }
      case LitKind::flag: b = s.flag(x, flag); break;
      case LitKind::human_holds: b = s.holding(Agent::human) == x; break;
    }
    return b == value;
  }
  bool operator==(const Literal&) const = default;
};

enum class NodeKind : std::uint8_t { truth, falsity, lit, conj, disj };

struct GoalNode {
  NodeKind kind = NodeKind::truth;
  std::int32_t lit = -1;
  std::vector<std::int32_t> kids;
};

class CompiledGoal {
 public:
  CompiledGoal() = default;
  static CompiledGoal compile(const Universe& u, const Formula& f);
  static CompiledGoal compile(const Universe& u, const GroundGoal& g);
  // Disjunction of single literals (grounded subgoals).
  static CompiledGoal any_of(const std::vector<Literal>& lits);
  static CompiledGoal single(const Literal& lit) { return any_of({lit}); }
  // Disjunction of literal conjunctions.
  static CompiledGoal any_of_all(const std::vector<std::vector<Literal>>& alternatives);

  bool evaluate(const WorldState& s) const { return eval(s, root_); }
  bool eval(const WorldState& s, std::int32_t node) const;
  std::size_t satisfied_conjuncts(const WorldState& s) const;

  std::int32_t root() const { return root_; }
  const std::vector<std::int32_t>& conjunct_roots() const { return conjuncts_; }
  const GoalNode& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<GoalNode>& nodes() const { return nodes_; }
  const std::vector<Literal>& literals() const { return lits_; }
  bool is_false() const { return nodes_[static_cast<std::size_t>(root_)].kind == NodeKind::falsity; }

 private:
  friend class GoalCompiler;
  std::vector<GoalNode> nodes_;
  std::vector<Literal> lits_;
  std::int32_t root_ = 0;
  std::vector<std::int32_t> conjuncts_;
};

}  // namespace pragworld
