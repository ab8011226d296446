#include "tdbu/problem_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace tdbu {

namespace {

void collect_symbols(const Term& t, std::vector<Symbol>& out) {
  if (t.is_var()) return;
  if (std::find(out.begin(), out.end(), t.functor()) == out.end())
    out.push_back(t.functor());
  for (const Term& a : t.args()) collect_symbols(a, out);
}

}  // namespace

void Problem::add(Clause c, std::string clause_name) {
  if (c.id() == 0 || find(c.id())) c.set_id(next_id());
  for (const Literal& l : c.literals()) {
    collect_symbols(l.atom(), signature);
    if (l.is_equality()) has_equality = true;
  }
  if (clause_name.empty()) clause_name = "c" + std::to_string(c.id());
  names.push_back(std::move(clause_name));
  clauses.push_back(std::move(c));
}

const Clause* Problem::find(ClauseId id) const {
  for (const Clause& c : clauses)
    if (c.id() == id) return &c;
  return nullptr;
}

ClauseId Problem::next_id() const {
  ClauseId id = 0;
  for (const Clause& c : clauses) id = std::max(id, c.id());
  return id + 1;
}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct RawTerm {
  std::string name;
  bool variable = false;
  std::vector<RawTerm> args;
  std::size_t line = 0, column = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Problem run(std::string name) {
    Problem p;
    p.name = std::move(name);
    skip();
    while (!at_end()) {
      statement(p);
      skip();
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, col_, msg);
  }
  [[noreturn]] void fail_at(std::size_t line, std::size_t col,
                            const std::string& msg) const {
    throw ParseError(line, col, msg);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char peek2() const {
    return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      char c = peek();
      if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) {
      std::string got = at_end() ? "end of input" : std::string("'") + peek() + "'";
      fail(std::string("expected '") + c + "', got " + got);
    }
    advance();
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    advance();
    return true;
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string word() {
    skip();
    if (!word_char(peek()) && peek() != '$') fail("expected identifier");
    std::string out;
    if (peek() == '$') {
      out += '$';
      advance();
    }
    while (!at_end() && word_char(peek())) {
      out += peek();
      advance();
    }
    if (out.empty() || out == "$") fail("expected identifier");
    return out;
  }

  RawTerm term() {
    skip();
    RawTerm t;
    t.line = line_;
    t.column = col_;
    char c = peek();
    if (std::isupper(static_cast<unsigned char>(c))) {
      t.variable = true;
      t.name = word();
      return t;
    }
    if (!std::islower(static_cast<unsigned char>(c)) && c != '$')
      fail("expected term");
    t.name = word();
    if (accept('(')) {
      do {
        t.args.push_back(term());
      } while (accept(','));
      expect(')');
    }
    return t;
  }

  Term build(const RawTerm& r, SymbolKind kind) {
    if (r.variable) {
      auto it = vars_.find(r.name);
      if (it == vars_.end()) it = vars_.emplace(r.name, fresh_var()).first;
      return Term::variable(it->second);
    }
    if (r.name.front() == '$' || !std::islower(static_cast<unsigned char>(r.name.front())))
      fail_at(r.line, r.column, "invalid symbol name " + r.name);
    auto arity = static_cast<std::uint32_t>(r.args.size());
    auto key = std::make_pair(r.name, kind);
    auto [it, inserted] = arities_.emplace(key, arity);
    if (!inserted && it->second != arity)
      fail_at(r.line, r.column,
              "arity mismatch for " +
                  std::string(kind == SymbolKind::kPredicate ? "predicate "
                                                             : "function ") +
                  r.name + ": used with " + std::to_string(it->second) +
                  " and " + std::to_string(arity) + " arguments");
    std::vector<Term> args;
    args.reserve(r.args.size());
    for (const RawTerm& a : r.args) args.push_back(build(a, SymbolKind::kFunction));
    return Term::apply(Symbol::intern(r.name, arity, kind), std::move(args));
  }

  // Returns false for `$false`.
  bool literal(std::vector<Literal>& out) {
    skip();
    bool positive = true;
    while (accept('~')) positive = !positive;
    RawTerm lhs = term();
    skip();
    if (peek() == '=' || (peek() == '!' && peek2() == '=')) {
      bool neq = peek() == '!';
      if (neq) advance();
      advance();
      RawTerm rhs = term();
      Term l = build(lhs, SymbolKind::kFunction);
      Term r = build(rhs, SymbolKind::kFunction);
      out.push_back(Literal::equation(positive != neq, l, r));
      return true;
    }
    if (lhs.variable) fail_at(lhs.line, lhs.column, "variable used as atom");
    if (lhs.name == "$false" && lhs.args.empty()) {
      if (!positive) fail_at(lhs.line, lhs.column, "negated $false");
      return false;
    }
    out.push_back(Literal(positive, build(lhs, SymbolKind::kPredicate)));
    return true;
  }

  void disjunction(std::vector<Literal>& out) {
    do {
      literal(out);
    } while (accept('|'));
  }

  void statement(Problem& p) {
    std::size_t line = line_, col = col_;
    std::string kw = word();
    if (kw != "cnf") fail_at(line, col, "expected cnf statement, got " + kw);
    expect('(');
    std::string name = word();
    expect(',');
    skip();
    std::size_t rline = line_, rcol = col_;
    std::string role = word();
    ClauseRole r;
    if (role == "axiom" || role == "hypothesis") {
      r = ClauseRole::kAxiom;
    } else if (role == "negated_conjecture") {
      r = ClauseRole::kGoal;
    } else {
      fail_at(rline, rcol, "unknown role " + role);
    }
    expect(',');
    vars_.clear();
    std::vector<Literal> lits;
    skip();
    // Parentheses around the disjunction are optional.
    if (peek() == '(') {
      advance();
      disjunction(lits);
      expect(')');
    } else {
      disjunction(lits);
    }
    expect(')');
    expect('.');
    p.add(Clause(std::move(lits), r), std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::map<std::string, Var> vars_;
  std::map<std::pair<std::string, SymbolKind>, std::uint32_t> arities_;
};

}  // namespace

Problem parse_problem(std::string_view text, std::string name) {
  return Parser(text).run(std::move(name));
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0)
    name = name.substr(0, dot);
  return parse_problem(ss.str(), name);
}

std::string serialize(const Problem& p) {
  std::string out;
  for (std::size_t i = 0; i < p.clauses.size(); ++i) {
    const Clause& c = p.clauses[i];
    std::string name = i < p.names.size() ? p.names[i] : "c" + std::to_string(c.id());
    out += "cnf(" + name + ", ";
    out += c.role() == ClauseRole::kGoal ? "negated_conjecture" : "axiom";
    out += ", (" + to_string(c) + ")).\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equality axioms

Problem add_equality_axioms(const Problem& p) {
  if (!p.has_equality) return p;
  Problem out = p;
  auto var = [] { return Term::variable(fresh_var()); };
  auto eq = [](bool pos, const Term& a, const Term& b) {
    return Literal::equation(pos, a, b);
  };
  {
    Term x = var();
    out.add(Clause({eq(true, x, x)}), "eq_reflexivity");
  }
  {
    Term x = var(), y = var();
    out.add(Clause({eq(false, x, y), eq(true, y, x)}), "eq_symmetry");
  }
  {
    Term x = var(), y = var(), z = var();
    out.add(Clause({eq(false, x, y), eq(false, y, z), eq(true, x, z)}),
            "eq_transitivity");
  }
  std::vector<Symbol> signature = p.signature;
  for (Symbol s : signature) {
    if (s.is_equality() || s.arity() == 0) continue;
    for (std::uint32_t pos = 0; pos < s.arity(); ++pos) {
      Term x = var(), y = var();
      std::vector<Term> left, right;
      for (std::uint32_t i = 0; i < s.arity(); ++i) {
        if (i == pos) {
          left.push_back(x);
          right.push_back(y);
        } else {
          Term z = var();
          left.push_back(z);
          right.push_back(z);
        }
      }
      Term l = Term::apply(s, std::move(left));
      Term r = Term::apply(s, std::move(right));
      std::string name = "eq_subst_" + s.name() + "_" + std::to_string(pos + 1);
      if (s.is_predicate())
        out.add(Clause({eq(false, x, y), Literal(false, l), Literal(true, r)}), name);
      else
        out.add(Clause({eq(false, x, y), eq(true, l, r)}), name);
    }
  }
  return out;
}

std::string_view mode_name(StartMode mode) {
  return mode == StartMode::kAll ? "ctc" : "ctcneg";
}

std::vector<Clause> goal_clauses(const Problem& p, StartMode mode) {
  if (mode == StartMode::kAll) return p.clauses;
  std::vector<Clause> out;
  for (const Clause& c : p.clauses)
    if (c.is_negative() || c.role() == ClauseRole::kGoal) out.push_back(c);
  return out;
}

}  // namespace tdbu
