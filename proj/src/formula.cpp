#include "pragworld/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pragworld/catalog.hpp"

namespace pragworld {

namespace {

enum class Tok { ident, name, lparen, rparen, comma, dot, amp, bar, tilde, arrow, end };

struct Token {
  Tok kind;
  std::string text;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'' || c == '-';
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::lparen, "("}), ++i;
    } else if (c == ')') {
      out.push_back({Tok::rparen, ")"}), ++i;
    } else if (c == ',') {
      out.push_back({Tok::comma, ","}), ++i;
    } else if (c == '.') {
      out.push_back({Tok::dot, "."}), ++i;
    } else if (c == '&') {
      out.push_back({Tok::amp, "&"}), ++i;
    } else if (c == '|') {
      out.push_back({Tok::bar, "|"}), ++i;
    } else if (c == '~') {
      out.push_back({Tok::tilde, "~"}), ++i;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::arrow, "->"}), i += 2;
    } else if (c == '[' || (c == '?' && i + 1 < s.size() && s[i + 1] == '[')) {
      const bool placeholder = c == '?';
      const auto close = s.find(']', i);
      if (close == std::string_view::npos) throw FormulaParseError("unterminated bracket");
      std::size_t end = close + 1;
      std::string text(s.substr(i, end - i));
      if (placeholder && end < s.size() && s[end] == '_') {
        std::size_t j = end + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        text += std::string(s.substr(end, j - end));
        end = j;
      }
      if (!placeholder) text = text.substr(1, text.size() - 2);
      out.push_back({Tok::name, text});
      i = end;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) {
        if (s[j] == '-' && j + 1 < s.size() && s[j + 1] == '>') break;
        ++j;
      }
      out.push_back({Tok::ident, std::string(s.substr(i, j - i))});
      i = j;
    } else {
      throw FormulaParseError(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr parse_all() {
    auto f = implication();
    expect(Tok::end, "end of formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw FormulaParseError(std::string("expected ") + what + " near '" + peek().text + "'");
  }

  FormulaPtr implication() {
    auto lhs = disjunction();
    if (accept(Tok::arrow)) return make_implies(lhs, implication());
    return lhs;
  }

  FormulaPtr disjunction() {
    std::vector<FormulaPtr> kids{conjunction()};
    while (accept(Tok::bar)) kids.push_back(conjunction());
    if (kids.size() == 1) return kids.front();
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::disj;
    f->children = std::move(kids);
    return f;
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> kids{unary()};
    while (accept(Tok::amp)) kids.push_back(unary());
    if (kids.size() == 1) return kids.front();
    return make_conj(std::move(kids));
  }

  FormulaPtr unary() {
    if (accept(Tok::tilde)) return make_not(unary());
    if (accept(Tok::lparen)) {
      auto f = implication();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (peek().kind == Tok::ident && (peek().text == "forall" || peek().text == "exists")) {
      const auto kind = take().text == "forall" ? FormulaKind::forall : FormulaKind::exists;
      std::vector<std::string> vars;
      while (peek().kind == Tok::ident) vars.push_back(take().text);
      if (vars.empty()) throw FormulaParseError("quantifier without variables");
      expect(Tok::dot, "'.' after quantified variables");
      auto body = implication();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = make_quant(kind, *it, body);
      return body;
    }
    return atom();
  }

  FormulaPtr atom() {
    if (peek().kind != Tok::ident && peek().kind != Tok::name) {
      throw FormulaParseError("expected predicate near '" + peek().text + "'");
    }
    const auto name = take().text;
    expect(Tok::lparen, "'(' after predicate");
    std::vector<std::string> args;
    do {
      if (peek().kind != Tok::ident) throw FormulaParseError("expected argument near '" + peek().text + "'");
      args.push_back(take().text);
    } while (accept(Tok::comma));
    expect(Tok::rparen, "')'");
    if (name == "in" || name == "on") {
      if (args.size() != 2) throw FormulaParseError(name + " takes two arguments");
      return make_atom(FormulaKind::relation, name, std::move(args));
    }
    if (args.size() != 1) throw FormulaParseError(name + " takes one argument");
    if (parse_flag(name)) return make_atom(FormulaKind::flag_test, name, std::move(args));
    return make_atom(FormulaKind::type_test, name, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool needs_parens(const Formula& f) { return !f.is_atom() && f.kind != FormulaKind::negation; }

std::string wrap(const FormulaPtr& f) {
  auto s = to_string(*f);
  return needs_parens(*f) ? "(" + s + ")" : s;
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.kind == FormulaKind::forall || f.kind == FormulaKind::exists) {
    const bool inserted = bound.insert(f.var).second;
    collect_free(*f.children[0], bound, out);
    if (inserted) bound.erase(f.var);
    return;
  }
  if (f.is_atom()) {
    for (const auto& a : f.args) {
      if (a.find('#') == std::string::npos && !bound.count(a)) out.insert(a);
    }
    return;
  }
  for (const auto& c : f.children) collect_free(*c, bound, out);
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::forall:
    case FormulaKind::exists:
      return std::string(f.kind == FormulaKind::forall ? "forall " : "exists ") + f.var + " . " +
             to_string(*f.children[0]);
    case FormulaKind::conj:
    case FormulaKind::disj: {
      std::string out;
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += f.kind == FormulaKind::conj ? " & " : " | ";
        out += wrap(f.children[i]);
      }
      return out;
    }
    case FormulaKind::implies: return wrap(f.children[0]) + " -> " + wrap(f.children[1]);
    case FormulaKind::negation: return "~" + wrap(f.children[0]);
    default: {
      std::string name = f.predicate;
      if (!f.is_placeholder() && name.find(' ') != std::string::npos) name = "[" + name + "]";
      std::string out = name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ", ";
        out += f.args[i];
      }
      return out + ")";
    }
  }
}

FormulaPtr make_quant(FormulaKind k, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = std::move(var);
  f->children = {std::move(body)};
  return f;
}

FormulaPtr make_conj(std::vector<FormulaPtr> kids) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::conj;
  f->children = std::move(kids);
  return f;
}

FormulaPtr make_not(FormulaPtr inner) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::negation;
  f->children = {std::move(inner)};
  return f;
}

FormulaPtr make_implies(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::implies;
  f->children = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr make_atom(FormulaKind k, std::string predicate, std::vector<std::string> args) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->predicate = std::move(predicate);
  f->args = std::move(args);
  return f;
}

FormulaPtr substitute_predicates(const FormulaPtr& f,
                                 const std::vector<std::pair<std::string, std::string>>& mapping) {
  if (f->kind == FormulaKind::type_test) {
    for (const auto& [from, to] : mapping) {
      if (f->predicate == from) return make_atom(FormulaKind::type_test, to, f->args);
    }
    return f;
  }
  if (f->is_atom()) return f;
  auto g = std::make_shared<Formula>(*f);
  for (auto& c : g->children) c = substitute_predicates(c, mapping);
  return g;
}

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return {out.begin(), out.end()};
}

void collect_placeholders(const Formula& f, std::vector<std::string>& out) {
  if (f.is_placeholder()) {
    if (std::find(out.begin(), out.end(), f.predicate) == out.end()) out.push_back(f.predicate);
    return;
  }
  for (const auto& c : f.children) collect_placeholders(*c, out);
}

std::string placeholder_subclass(std::string_view placeholder) {
  const auto open = placeholder.find('[');
  const auto close = placeholder.find(']');
  if (open == std::string_view::npos || close == std::string_view::npos) {
    throw FormulaParseError("malformed placeholder " + std::string(placeholder));
  }
  return std::string(placeholder.substr(open + 1, close - open - 1));
}

}  // namespace pragworld
