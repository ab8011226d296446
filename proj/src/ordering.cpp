#include <algorithm>

#include "tdbu/saturation.hpp"

namespace tdbu {

std::string_view ordering_name(OrderingMode mode) {
  return mode == OrderingMode::kNone ? "none" : "precedence";
}

namespace {

Symbol top_symbol() {
  static const Symbol t = Symbol::intern("$true", 0, SymbolKind::kFunction);
  return t;
}

}  // namespace

TermOrder::TermOrder(std::vector<Symbol> precedence)
    : mode_(OrderingMode::kPrecedence), precedence_(std::move(precedence)) {
  ranks_[top_symbol()] = 0;
  for (std::size_t i = 0; i < precedence_.size(); ++i)
    ranks_[precedence_[i]] = static_cast<int>(i) + 1;
}

TermOrder TermOrder::for_problem(const Problem& p) {
  std::vector<Symbol> syms = p.signature;
  std::stable_sort(syms.begin(), syms.end(), [](Symbol a, Symbol b) {
    if (a.is_predicate() != b.is_predicate()) return b.is_predicate();
    return a.arity() < b.arity();
  });
  return TermOrder(std::move(syms));
}

int TermOrder::rank(Symbol f) const {
  auto it = ranks_.find(f);
  return it == ranks_.end() ? -1 : it->second;
}

bool TermOrder::lpo_greater(const Term& s, const Term& t) const {
  if (s.is_var()) return false;
  if (t.is_var()) return occurs(t.var(), s);
  for (const Term& si : s.args())
    if (si == t || lpo_greater(si, t)) return true;
  auto dominates_args = [&] {
    for (const Term& tj : t.args())
      if (!lpo_greater(s, tj)) return false;
    return true;
  };
  if (s.functor() == t.functor()) {
    if (!dominates_args()) return false;
    for (std::size_t i = 0; i < s.args().size(); ++i) {
      if (s.arg(i) == t.arg(i)) continue;
      return lpo_greater(s.arg(i), t.arg(i));
    }
    return false;
  }
  int rf = rank(s.functor()), rg = rank(t.functor());
  if (rf < 0 || rg < 0 || rf <= rg) return false;
  return dominates_args();
}

Cmp TermOrder::compare(const Term& s, const Term& t) const {
  if (s == t) return Cmp::kEqual;
  if (mode_ == OrderingMode::kNone) return Cmp::kIncomparable;
  if (lpo_greater(s, t)) return Cmp::kGreater;
  if (lpo_greater(t, s)) return Cmp::kLess;
  return Cmp::kIncomparable;
}

namespace {

std::vector<Term> literal_multiset(const Literal& l) {
  Term a = l.is_equality() ? l.lhs() : l.atom();
  Term b = l.is_equality() ? l.rhs() : Term::constant(top_symbol());
  if (l.positive()) return {a, b};
  return {a, a, b, b};
}

}  // namespace

Cmp TermOrder::compare(const Literal& a, const Literal& b) const {
  if (a == b) return Cmp::kEqual;
  if (mode_ == OrderingMode::kNone) return Cmp::kIncomparable;
  std::vector<Term> m = literal_multiset(a);
  std::vector<Term> n = literal_multiset(b);
  for (auto it = m.begin(); it != m.end();) {
    auto jt = std::find(n.begin(), n.end(), *it);
    if (jt != n.end()) {
      n.erase(jt);
      it = m.erase(it);
    } else {
      ++it;
    }
  }
  if (m.empty() && n.empty()) return Cmp::kEqual;
  auto dominates = [&](const std::vector<Term>& big, const std::vector<Term>& small) {
    if (big.empty()) return false;
    for (const Term& y : small) {
      bool covered = false;
      for (const Term& x : big)
        if (lpo_greater(x, y)) {
          covered = true;
          break;
        }
      if (!covered) return false;
    }
    return true;
  };
  if (dominates(m, n)) return Cmp::kGreater;
  if (dominates(n, m)) return Cmp::kLess;
  return Cmp::kIncomparable;
}

bool TermOrder::maximal(std::span<const Literal> lits, std::size_t i) const {
  if (mode_ == OrderingMode::kNone) return true;
  for (std::size_t j = 0; j < lits.size(); ++j)
    if (j != i && compare(lits[j], lits[i]) == Cmp::kGreater) return false;
  return true;
}

bool TermOrder::maximal(const Clause& c, std::size_t i) const {
  return maximal(c.literals(), i);
}

}  // namespace tdbu
