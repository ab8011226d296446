#include <algorithm>

#include "tdbu/kernel.hpp"

namespace tdbu {

// ---------------------------------------------------------------------------
// Substitution

const Term* Substitution::find(Var v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(Var v, Term t) {
  if (t.is_var() && t.var() == v) return;
  map_.insert_or_assign(v, std::move(t));
}

Term Substitution::apply(const Term& t) const {
  if (map_.empty() || t.ground()) return t;
  if (t.is_var()) {
    const Term* b = find(t.var());
    return b ? *b : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::apply(t.functor(), std::move(args)) : t;
}

Literal Substitution::apply(const Literal& l) const {
  return Literal(l.positive(), apply(l.atom()));
}

Clause Substitution::apply(const Clause& c) const {
  std::vector<Literal> lits;
  lits.reserve(c.size());
  for (const Literal& l : c.literals()) lits.push_back(apply(l));
  return Clause(std::move(lits), c.role(), c.id());
}

// ---------------------------------------------------------------------------
// Bindings

const Term* Bindings::lookup(Var v) const {
  auto it = map_.find(v.id);
  return it == map_.end() ? nullptr : &it->second;
}

Term Bindings::deref(const Term& t) const {
  Term cur = t;
  while (cur.is_var()) {
    const Term* b = lookup(cur.var());
    if (!b) break;
    cur = *b;
  }
  return cur;
}

Term Bindings::resolve(const Term& t) const {
  if (t.ground() || map_.empty()) return t;
  Term d = deref(t);
  if (d.is_var() || d.ground()) return d;
  std::vector<Term> args;
  args.reserve(d.args().size());
  bool changed = false;
  for (const Term& a : d.args()) {
    args.push_back(resolve(a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::apply(d.functor(), std::move(args)) : d;
}

Literal Bindings::resolve(const Literal& l) const {
  return Literal(l.positive(), resolve(l.atom()));
}

void Bindings::bind(Var v, const Term& t) {
  map_.emplace(v.id, t);
  trail_.push_back(v.id);
}

void Bindings::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    map_.erase(trail_.back());
    trail_.pop_back();
  }
}

bool Bindings::occurs_deref(Var v, const Term& t) const {
  Term d = deref(t);
  if (d.is_var()) return d.var() == v;
  if (d.ground()) return false;
  for (const Term& a : d.args())
    if (occurs_deref(v, a)) return true;
  return false;
}

bool Bindings::unify_rec(const Term& a, const Term& b) {
  Term x = deref(a);
  Term y = deref(b);
  if (x.same_node(y)) return true;
  if (x.is_var()) {
    if (y.is_var() && y.var() == x.var()) return true;
    if (occurs_deref(x.var(), y)) return false;
    bind(x.var(), y);
    return true;
  }
  if (y.is_var()) {
    if (occurs_deref(y.var(), x)) return false;
    bind(y.var(), x);
    return true;
  }
  if (x.functor() != y.functor()) return false;
  if (x.ground() && y.ground()) return x == y;
  for (std::size_t i = 0; i < x.args().size(); ++i)
    if (!unify_rec(x.arg(i), y.arg(i))) return false;
  return true;
}

bool Bindings::unify(const Term& a, const Term& b) {
  std::size_t m = mark();
  if (unify_rec(a, b)) return true;
  undo(m);
  return false;
}

namespace {

bool match_rec(Bindings& bindings, const Term& pattern, const Term& target) {
  if (pattern.is_var()) {
    if (const Term* b = bindings.lookup(pattern.var())) return *b == target;
    return bindings.unify(pattern, target);
  }
  if (target.is_var() || pattern.functor() != target.functor()) return false;
  if (pattern.ground()) return pattern == target;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_rec(bindings, pattern.arg(i), target.arg(i)))
      return false;
  return true;
}

}  // namespace

bool Bindings::match(const Term& pattern, const Term& target) {
  std::size_t m = mark();
  if (match_rec(*this, pattern, target)) return true;
  undo(m);
  return false;
}

Substitution Bindings::to_substitution() const {
  Substitution s;
  for (const auto& [id, t] : map_) s.bind(Var{id}, resolve(t));
  return s;
}

// ---------------------------------------------------------------------------
// Free functions

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Bindings bindings;
  if (!bindings.unify(a, b)) return std::nullopt;
  return bindings.to_substitution();
}

std::optional<Substitution> unify(const Literal& a, const Literal& b) {
  return unify(a.atom(), b.atom());
}

namespace {

// Identity bindings are dropped by Substitution::bind, so variables that
// must map to themselves are tracked separately.
struct Matcher {
  Substitution subst;
  std::vector<Var> fixed;

  bool run(const Term& p, const Term& t) {
    if (p.is_var()) {
      if (const Term* b = subst.find(p.var())) return *b == t;
      if (std::find(fixed.begin(), fixed.end(), p.var()) != fixed.end())
        return t.is_var() && t.var() == p.var();
      if (t.is_var() && t.var() == p.var()) {
        fixed.push_back(p.var());
        return true;
      }
      subst.bind(p.var(), t);
      return true;
    }
    if (t.is_var() || p.functor() != t.functor()) return false;
    if (p.ground()) return p == t;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!run(p.arg(i), t.arg(i))) return false;
    return true;
  }
};

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& target) {
  Matcher m;
  if (!m.run(pattern, target)) return std::nullopt;
  return std::move(m.subst);
}

std::optional<Substitution> match(const Literal& pattern,
                                  const Literal& target) {
  if (pattern.positive() != target.positive()) return std::nullopt;
  return match(pattern.atom(), target.atom());
}

}  // namespace tdbu
