#include <algorithm>
#include <map>

#include "tdbu/kernel.hpp"

namespace tdbu {

std::string_view role_name(ClauseRole role) {
  switch (role) {
    case ClauseRole::kAxiom: return "axiom";
    case ClauseRole::kGoal: return "goal";
    case ClauseRole::kDerived: return "derived";
  }
  return "axiom";
}

Clause::Clause(std::vector<Literal> literals, ClauseRole role, ClauseId id)
    : literals_(std::move(literals)), role_(role), id_(id) {
  std::sort(literals_.begin(), literals_.end(),
            [](const Literal& a, const Literal& b) { return compare(a, b) < 0; });
  literals_.erase(std::unique(literals_.begin(), literals_.end()),
                  literals_.end());
}

bool Clause::is_negative() const {
  if (literals_.empty()) return false;
  return std::all_of(literals_.begin(), literals_.end(),
                     [](const Literal& l) { return l.negative(); });
}

bool Clause::is_horn() const {
  return std::count_if(literals_.begin(), literals_.end(),
                       [](const Literal& l) { return l.positive(); }) <= 1;
}

bool Clause::is_ground() const {
  return std::all_of(literals_.begin(), literals_.end(),
                     [](const Literal& l) { return l.atom().ground(); });
}

// ---------------------------------------------------------------------------
// Renaming

Clause rename_apart(const Clause& c, std::span<const Var> /*used*/) {
  std::vector<Var> vars = variables(c);
  if (vars.empty()) return c;
  std::sort(vars.begin(), vars.end());
  Substitution s;
  for (Var v : vars) s.bind(v, Term::variable(fresh_var()));
  return s.apply(c);
}

Literal rename_apart(const Literal& l, Substitution* renaming) {
  std::vector<Var> vars = variables(l);
  std::sort(vars.begin(), vars.end());
  Substitution local;
  Substitution& s = renaming ? *renaming : local;
  for (Var v : vars)
    if (!s.find(v)) s.bind(v, Term::variable(fresh_var()));
  return s.apply(l);
}

// ---------------------------------------------------------------------------
// Variants

namespace {

struct VarBijection {
  // Linked pairs in link order; clauses are small, so a linear scan wins
  // over a map.
  std::vector<std::pair<Var, Var>> pairs;

  bool link(Var a, Var b) {
    for (const auto& [x, y] : pairs)
      if (x == a || y == b) return x == a && y == b;
    pairs.emplace_back(a, b);
    return true;
  }

  std::size_t mark() const { return pairs.size(); }
  void undo(std::size_t m) { pairs.resize(m); }

  bool terms(const Term& a, const Term& b) {
    if (a.is_var() || b.is_var())
      return a.is_var() && b.is_var() && link(a.var(), b.var());
    if (a.functor() != b.functor()) return false;
    if (a.ground() || b.ground()) return a == b;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      if (!terms(a.arg(i), b.arg(i))) return false;
    return true;
  }
};

bool variant_rec(const Clause& a, const Clause& b, std::size_t i,
                 std::vector<bool>& used, VarBijection& bij) {
  if (i == a.size()) return true;
  const Literal& la = a[i];
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    const Literal& lb = b[j];
    if (la.positive() != lb.positive() || la.shape_hash() != lb.shape_hash())
      continue;
    std::size_t mark = bij.mark();
    if (bij.terms(la.atom(), lb.atom())) {
      used[j] = true;
      if (variant_rec(a, b, i + 1, used, bij)) return true;
      used[j] = false;
    }
    bij.undo(mark);
  }
  return false;
}

bool shares_variables(const Clause& a, const Clause& b) {
  std::vector<Var> va = variables(a);
  if (va.empty()) return false;
  std::vector<Var> vb = variables(b);
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  std::vector<Var> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::back_inserter(common));
  return !common.empty();
}

bool subsumes_rec(const Clause& a, const Clause& b, std::size_t i,
                  std::vector<bool>& used, Bindings& bindings) {
  if (i == a.size()) return true;
  const Literal& la = a[i];
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    const Literal& lb = b[j];
    if (la.positive() != lb.positive() || la.predicate() != lb.predicate())
      continue;
    std::size_t mark = bindings.mark();
    if (bindings.match(la.atom(), lb.atom())) {
      used[j] = true;
      if (subsumes_rec(a, b, i + 1, used, bindings)) return true;
      used[j] = false;
    }
    bindings.undo(mark);
  }
  return false;
}

}  // namespace

bool variant_equal(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  if (a == b) return true;
  std::vector<bool> used(b.size(), false);
  VarBijection bij;
  return variant_rec(a, b, 0, used, bij);
}

bool variant_equal(const Literal& a, const Literal& b) {
  if (a.positive() != b.positive()) return false;
  VarBijection bij;
  return bij.terms(a.atom(), b.atom());
}

bool subsumes(const Clause& a, const Clause& b) {
  if (a.size() > b.size()) return false;
  if (shares_variables(a, b)) return subsumes(rename_apart(a), b);
  std::vector<bool> used(b.size(), false);
  Bindings bindings;
  return subsumes_rec(a, b, 0, used, bindings);
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Literal& l = c[i];
    if (l.positive() && l.is_equality() && l.lhs() == l.rhs()) return true;
    if (!l.negative()) continue;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j].positive() && c[j].atom() == l.atom()) return true;
  }
  return false;
}

namespace {

// Shape hash that also records which variable positions coincide, with
// variables numbered by first occurrence in the literal.
std::size_t pattern_hash(const Term& t, std::vector<Var>& seen) {
  if (t.is_var()) {
    auto it = std::find(seen.begin(), seen.end(), t.var());
    std::size_t k = static_cast<std::size_t>(it - seen.begin());
    if (it == seen.end()) seen.push_back(t.var());
    return 0x9e3779b97f4a7c15ULL * (k + 1);
  }
  if (t.ground()) return t.hash();
  std::size_t h = t.functor().hash();
  for (const Term& a : t.args())
    h = h * 0x100000001b3ULL ^ (pattern_hash(a, seen) + (h >> 7));
  return h;
}

}  // namespace

std::size_t variant_hash(const Clause& c) {
  std::size_t h = c.size() * 0x9e3779b97f4a7c15ULL;
  std::vector<Var> seen;
  for (const Literal& l : c.literals()) {
    seen.clear();
    std::size_t lh = pattern_hash(l.atom(), seen) ^ (l.positive() ? 0x51ULL : 0xa3ULL);
    h += lh * 0xff51afd7ed558ccdULL;
  }
  return h;
}

}  // namespace tdbu
