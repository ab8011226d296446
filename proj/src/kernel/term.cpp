#include <algorithm>
#include <functional>
#include <stdexcept>

#include "tdbu/kernel.hpp"

namespace tdbu {

struct Term::Node {
  Symbol functor;  // invalid for variables
  Var var;
  std::vector<Term> args;
  std::uint32_t symbol_count = 1;
  std::uint32_t var_occurrences = 0;
  std::uint32_t depth = 1;
  bool ground = true;
  std::size_t hash = 0;
  std::size_t shape_hash = 0;
};

namespace {

constexpr std::size_t kVarShape = 0x9e3779b97f4a7c15ULL;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term Term::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->var = v;
  n->var_occurrences = 1;
  n->ground = false;
  n->hash = mix(0x51ed27, v.id);
  n->shape_hash = kVarShape;
  return Term(std::move(n));
}

Term Term::apply(Symbol f, std::vector<Term> args) {
  if (!f.valid()) throw std::invalid_argument("invalid symbol");
  if (args.size() != f.arity())
    throw std::invalid_argument("arity mismatch for symbol " + f.name());
  auto n = std::make_shared<Node>();
  n->functor = f;
  n->hash = f.hash();
  n->shape_hash = f.hash();
  std::uint32_t max_depth = 0;
  for (const Term& a : args) {
    n->symbol_count += a.symbol_count();
    n->var_occurrences += a.var_occurrences();
    n->ground = n->ground && a.ground();
    max_depth = std::max(max_depth, a.depth());
    n->hash = mix(n->hash, a.hash());
    n->shape_hash = mix(n->shape_hash, a.shape_hash());
  }
  n->depth = 1 + max_depth;
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return !node_->functor.valid(); }
Var Term::var() const { return node_->var; }
Symbol Term::functor() const { return node_->functor; }
std::span<const Term> Term::args() const { return node_->args; }
std::uint32_t Term::symbol_count() const { return node_->symbol_count; }
std::uint32_t Term::var_occurrences() const { return node_->var_occurrences; }
std::uint32_t Term::depth() const { return node_->depth; }
bool Term::ground() const { return node_->ground; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::shape_hash() const { return node_->shape_hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return compare(a, b) == 0;
}

namespace {

int compare_impl(const Term& a, const Term& b, bool shape_only) {
  if (a.same_node(b)) return 0;
  if (a.is_var() || b.is_var()) {
    if (a.is_var() && b.is_var()) {
      if (shape_only) return 0;
      return a.var().id < b.var().id ? -1 : (a.var().id > b.var().id ? 1 : 0);
    }
    return a.is_var() ? -1 : 1;
  }
  if (a.functor() != b.functor()) return a.functor() < b.functor() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    int c = compare_impl(a.arg(i), b.arg(i), shape_only);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

int compare(const Term& a, const Term& b) { return compare_impl(a, b, false); }
int compare_shape(const Term& a, const Term& b) {
  return compare_impl(a, b, true);
}

bool occurs(Var v, const Term& t) {
  if (t.is_var()) return t.var() == v;
  if (t.ground()) return false;
  for (const Term& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

Literal::Literal(bool positive, Term atom)
    : positive_(positive), atom_(std::move(atom)) {
  if (atom_.is_var() || !atom_.functor().is_predicate())
    throw std::invalid_argument("literal atom must be headed by a predicate");
}

Literal Literal::equation(bool positive, Term lhs, Term rhs) {
  return Literal(positive,
                 Term::apply(Symbol::equality(), {std::move(lhs), std::move(rhs)}));
}

std::size_t Literal::shape_hash() const {
  return mix(atom_.shape_hash(), positive_ ? 1 : 2);
}

int compare(const Literal& a, const Literal& b) {
  if (a.positive() != b.positive()) return a.positive() ? 1 : -1;
  if (a.predicate() != b.predicate())
    return a.predicate() < b.predicate() ? -1 : 1;
  int c = compare_shape(a.atom(), b.atom());
  if (c != 0) return c;
  return compare(a.atom(), b.atom());
}

namespace {

void collect_vars(const Term& t, std::vector<Var>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var()) == out.end())
      out.push_back(t.var());
    return;
  }
  if (t.ground()) return;
  for (const Term& a : t.args()) collect_vars(a, out);
}

}  // namespace

std::vector<Var> variables(const Term& t) {
  std::vector<Var> out;
  collect_vars(t, out);
  return out;
}

std::vector<Var> variables(const Literal& l) { return variables(l.atom()); }

std::vector<Var> variables(const Clause& c) {
  std::vector<Var> out;
  for (const Literal& l : c.literals()) collect_vars(l.atom(), out);
  return out;
}

Measures measures(const Literal& l) {
  return Measures{l.atom().symbol_count(), l.atom().var_occurrences(),
                  static_cast<std::uint32_t>(variables(l).size()),
                  l.atom().depth()};
}

Measures measures(const Clause& c) {
  Measures m;
  for (const Literal& l : c.literals()) {
    m.symbol_count += l.atom().symbol_count();
    m.var_occurrences += l.atom().var_occurrences();
    m.max_depth = std::max(m.max_depth, l.atom().depth());
  }
  m.distinct_vars = static_cast<std::uint32_t>(variables(c).size());
  return m;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

using VarNames = std::map<Var, std::string>;

void print_term(const Term& t, const VarNames* names, std::string& out) {
  if (t.is_var()) {
    if (names) {
      auto it = names->find(t.var());
      if (it != names->end()) {
        out += it->second;
        return;
      }
    }
    out += "X" + std::to_string(t.var().id);
    return;
  }
  out += t.functor().name();
  if (t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print_term(t.arg(i), names, out);
  }
  out += ')';
}

void print_literal(const Literal& l, const VarNames* names, std::string& out) {
  if (l.is_equality()) {
    print_term(l.lhs(), names, out);
    out += l.positive() ? " = " : " != ";
    print_term(l.rhs(), names, out);
    return;
  }
  if (l.negative()) out += '~';
  print_term(l.atom(), names, out);
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print_term(t, nullptr, out);
  return out;
}

std::string to_string(const Literal& l) {
  std::string out;
  print_literal(l, nullptr, out);
  return out;
}

std::string to_string(const Clause& c) {
  if (c.empty()) return "$false";
  VarNames names;
  for (Var v : variables(c)) names.emplace(v, "X" + std::to_string(names.size()));
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    print_literal(c[i], &names, out);
  }
  return out;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += "X" + std::to_string(v.id) + " -> " + to_string(t);
  }
  return out + "}";
}

}  // namespace tdbu
