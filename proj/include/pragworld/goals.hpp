// Goal templates, instantiation and evaluation.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pragworld/formula.hpp"
#include "pragworld/rng.hpp"
#include "pragworld/world.hpp"

namespace pragworld {

enum class Version { v1, v2 };
std::string_view version_name(Version v);
Version parse_version(std::string_view s);  // throws std::invalid_argument

// One conjunct of a goal. A block with shared variables is a single prenex formula
//   exists vars . constraint & line_1 & ... & line_n
// while a standalone line has no variables and no constraint.
struct GoalBlock {
  std::vector<std::string> vars;
  FormulaPtr constraint;  // may be null
  std::vector<FormulaPtr> lines;

  FormulaPtr formula() const;
};

struct GoalTemplate {
  std::string name;
  bool v1 = false;
  bool v2 = false;
  std::vector<GoalBlock> blocks;

  // Placeholder strings in order of first appearance.
  std::vector<std::string> placeholders() const;
};

struct GroundGoal {
  std::string template_name;
  std::vector<std::pair<std::string, std::string>> bindings;  // placeholder -> category
  std::vector<GoalBlock> blocks;

  FormulaPtr formula() const;  // conjunction of block formulas
  std::size_t conjunct_count() const { return blocks.size(); }
  std::vector<std::string> conjunct_texts() const;
};

class TemplateParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<GoalTemplate> parse_templates(std::string_view text);
// The shipped catalog (embedded at build time).
const std::vector<GoalTemplate>& goal_templates();
std::vector<const GoalTemplate*> templates_for(Version v);
const GoalTemplate& find_template(std::string_view name);  // throws std::invalid_argument

// Type-test predicate semantics: a category, subclass or class name.
bool type_matches(CategoryId category, std::string_view predicate);

GroundGoal instantiate(const GoalTemplate& t, Rng& rng);
GroundGoal sample_goal(Version v, Rng& rng);
// Rebuilds a ground goal from a template name and its bindings.
GroundGoal ground_with(const GoalTemplate& t, const std::vector<std::pair<std::string, std::string>>& bindings);

// Closed-formula evaluation under direct in/on semantics. Throws FreeVariableError on open
// formulas and UnknownObjectError on unknown constants.
bool evaluate(const WorldState& s, const Formula& f);
bool evaluate(const WorldState& s, const GroundGoal& g);
std::size_t satisfied_conjuncts(const WorldState& s, const GroundGoal& g);

// Flag atoms other than open appearing anywhere in the template.
bool has_change_state_atom(const GoalTemplate& t);

}  // namespace pragworld
