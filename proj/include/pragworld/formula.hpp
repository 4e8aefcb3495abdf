// First-order formulas over a finite object universe.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pragworld {

enum class FormulaKind { forall, exists, conj, disj, implies, negation, type_test, flag_test, relation };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string var;                  // quantifiers
  std::vector<FormulaPtr> children;  // connectives and quantifier body
  std::string predicate;             // atoms: type name / placeholder, flag name, "in" or "on"
  std::vector<std::string> args;     // atoms: variables or object ids (ids contain '#')

  bool is_atom() const {
    return kind == FormulaKind::type_test || kind == FormulaKind::flag_test || kind == FormulaKind::relation;
  }
  bool is_placeholder() const { return kind == FormulaKind::type_test && predicate.starts_with("?["); }
};

class FormulaParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FreeVariableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

FormulaPtr parse_formula(std::string_view text);
std::string to_string(const Formula& f);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }

FormulaPtr make_quant(FormulaKind k, std::string var, FormulaPtr body);
FormulaPtr make_conj(std::vector<FormulaPtr> kids);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr make_atom(FormulaKind k, std::string predicate, std::vector<std::string> args);

// Rewrites type-test predicates through a placeholder map.
FormulaPtr substitute_predicates(const FormulaPtr& f,
                                 const std::vector<std::pair<std::string, std::string>>& mapping);

// Names of free variables (sorted, unique).
std::vector<std::string> free_variables(const Formula& f);
// Placeholders ("?[sub]" or "?[sub]_k") appearing in type tests.
void collect_placeholders(const Formula& f, std::vector<std::string>& out);
// Subclass name inside a placeholder.
std::string placeholder_subclass(std::string_view placeholder);

}  // namespace pragworld
