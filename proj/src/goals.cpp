#include "pragworld/goals.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pragworld/catalog.hpp"
#include "pragworld/embedded_data.hpp"
#include "pragworld/goal_compile.hpp"

namespace pragworld {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// "exists y1 y2 . constraint" -> vars and constraint formula
GoalBlock parse_block_header(const std::string& text, int line_no) {
  std::istringstream in(text);
  std::string word;
  in >> word;
  if (word != "exists") throw TemplateParseError("line " + std::to_string(line_no) + ": block must start with exists");
  GoalBlock b;
  while (in >> word && word != ".") b.vars.push_back(word);
  if (word != "." || b.vars.empty()) {
    throw TemplateParseError("line " + std::to_string(line_no) + ": malformed block header");
  }
  std::string rest;
  std::getline(in, rest);
  rest = trim(rest);
  if (!rest.empty()) b.constraint = parse_formula(rest);
  return b;
}

void flatten_conj(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == FormulaKind::conj) {
    for (const auto& c : f->children) flatten_conj(c, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::string_view version_name(Version v) { return v == Version::v1 ? "v1" : "v2"; }

Version parse_version(std::string_view s) {
  if (s == "v1") return Version::v1;
  if (s == "v2") return Version::v2;
  throw std::invalid_argument("unknown version: " + std::string(s));
}

FormulaPtr GoalBlock::formula() const {
  if (vars.empty() && lines.size() == 1 && !constraint) return lines.front();
  std::vector<FormulaPtr> kids;
  if (constraint) flatten_conj(constraint, kids);
  for (const auto& l : lines) kids.push_back(l);
  FormulaPtr body = kids.size() == 1 ? kids.front() : make_conj(kids);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = make_quant(FormulaKind::exists, *it, body);
  return body;
}

std::vector<std::string> GoalTemplate::placeholders() const {
  std::vector<std::string> out;
  for (const auto& b : blocks) {
    if (b.constraint) collect_placeholders(*b.constraint, out);
    for (const auto& l : b.lines) collect_placeholders(*l, out);
  }
  return out;
}

FormulaPtr GroundGoal::formula() const {
  std::vector<FormulaPtr> kids;
  for (const auto& b : blocks) kids.push_back(b.formula());
  return kids.size() == 1 ? kids.front() : make_conj(kids);
}

std::vector<std::string> GroundGoal::conjunct_texts() const {
  std::vector<std::string> out;
  for (const auto& b : blocks) out.push_back(to_string(*b.formula()));
  return out;
}

std::vector<GoalTemplate> parse_templates(std::string_view text) {
  std::vector<GoalTemplate> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool in_block = false;
  auto fail = [&](const std::string& msg) { throw TemplateParseError("line " + std::to_string(line_no) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++line_no;
    const bool indented = !raw.empty() && (raw[0] == ' ' || raw[0] == '\t');
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'key: value'");
    const std::string key = line.substr(0, colon);
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "template") {
      out.push_back(GoalTemplate{value, false, false, {}});
      in_block = false;
      continue;
    }
    if (out.empty()) fail("entry before first template");
    auto& t = out.back();
    try {
      if (key == "versions") {
        std::istringstream vs(value);
        std::string v;
        while (vs >> v) {
          if (v == "v1") t.v1 = true;
          else if (v == "v2") t.v2 = true;
          else fail("unknown version " + v);
        }
      } else if (key == "block") {
        t.blocks.push_back(parse_block_header(value, line_no));
        in_block = true;
      } else if (key == "line") {
        auto f = parse_formula(value);
        if (indented && in_block) {
          t.blocks.back().lines.push_back(f);
        } else {
          in_block = false;
          if (!free_variables(*f).empty()) fail("standalone line has free variables");
          t.blocks.push_back(GoalBlock{{}, nullptr, {f}});
        }
      } else {
        fail("unknown key " + key);
      }
    } catch (const FormulaParseError& e) {
      fail(e.what());
    }
  }
  for (const auto& t : out) {
    if (t.blocks.empty()) throw TemplateParseError("template '" + t.name + "' has no conjuncts");
    if (!t.v1 && !t.v2) throw TemplateParseError("template '" + t.name + "' has no version");
    for (const auto& b : t.blocks) {
      if (b.lines.empty()) throw TemplateParseError("template '" + t.name + "' has an empty block");
      if (!free_variables(*b.formula()).empty()) {
        throw TemplateParseError("template '" + t.name + "' has free variables");
      }
    }
  }
  return out;
}

const std::vector<GoalTemplate>& goal_templates() {
  static const std::vector<GoalTemplate> all = parse_templates(embedded::kGoalTemplates);
  return all;
}

std::vector<const GoalTemplate*> templates_for(Version v) {
  std::vector<const GoalTemplate*> out;
  for (const auto& t : goal_templates()) {
    if (v == Version::v1 ? t.v1 : t.v2) out.push_back(&t);
  }
  return out;
}

const GoalTemplate& find_template(std::string_view name) {
  for (const auto& t : goal_templates()) {
    if (t.name == name) return t;
  }
  throw std::invalid_argument("unknown goal template: " + std::string(name));
}

bool type_matches(CategoryId category, std::string_view predicate) {
  const auto& cat = Catalog::instance();
  const auto& spec = cat.category(category);
  return spec.name == predicate || cat.subclass(spec.subclass).name == predicate || class_name(spec.cls) == predicate;
}

GroundGoal ground_with(const GoalTemplate& t, const std::vector<std::pair<std::string, std::string>>& bindings) {
  GroundGoal g;
  g.template_name = t.name;
  g.bindings = bindings;
  for (const auto& p : t.placeholders()) {
    const bool bound = std::any_of(bindings.begin(), bindings.end(), [&](const auto& b) { return b.first == p; });
    if (!bound) throw std::invalid_argument("placeholder " + p + " is not bound");
  }
  for (const auto& b : t.blocks) {
    GoalBlock gb;
    gb.vars = b.vars;
    if (b.constraint) gb.constraint = substitute_predicates(b.constraint, bindings);
    for (const auto& l : b.lines) gb.lines.push_back(substitute_predicates(l, bindings));
    g.blocks.push_back(std::move(gb));
  }
  return g;
}

GroundGoal instantiate(const GoalTemplate& t, Rng& rng) {
  const auto& cat = Catalog::instance();
  std::map<std::string, std::vector<CategoryId>> used;  // per subclass
  std::vector<std::pair<std::string, std::string>> bindings;
  for (const auto& p : t.placeholders()) {
    const auto sub_name = placeholder_subclass(p);
    const auto& sub = cat.subclass(cat.subclass_id(sub_name));
    auto& taken = used[sub_name];
    std::vector<CategoryId> options;
    for (auto c : sub.categories) {
      if (std::find(taken.begin(), taken.end(), c) == taken.end()) options.push_back(c);
    }
    if (options.empty()) {
      throw std::invalid_argument("subclass '" + sub_name + "' has too few categories for template '" + t.name + "'");
    }
    const auto c = rng.pick(options);
    taken.push_back(c);
    bindings.emplace_back(p, cat.category(c).name);
  }
  return ground_with(t, bindings);
}

GroundGoal sample_goal(Version v, Rng& rng) {
  const auto pool = templates_for(v);
  return instantiate(*rng.pick(pool), rng);
}

bool evaluate(const WorldState& s, const Formula& f) {
  const auto free = free_variables(f);
  if (!free.empty()) throw FreeVariableError("free variable in goal: " + free.front());
  return CompiledGoal::compile(s.universe(), f).evaluate(s);
}

bool evaluate(const WorldState& s, const GroundGoal& g) { return CompiledGoal::compile(s.universe(), g).evaluate(s); }

std::size_t satisfied_conjuncts(const WorldState& s, const GroundGoal& g) {
  return CompiledGoal::compile(s.universe(), g).satisfied_conjuncts(s);
}

namespace {
bool has_state_flag(const Formula& f) {
  if (f.kind == FormulaKind::flag_test) return f.predicate != "open";
  return std::any_of(f.children.begin(), f.children.end(), [](const auto& c) { return has_state_flag(*c); });
}
}  // namespace

bool has_change_state_atom(const GoalTemplate& t) {
  for (const auto& b : t.blocks) {
    if (b.constraint && has_state_flag(*b.constraint)) return true;
    for (const auto& l : b.lines) {
      if (has_state_flag(*l)) return true;
    }
  }
  return false;
}

}  // namespace pragworld
