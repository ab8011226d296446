#include <algorithm>

#include "tdbu/saturation.hpp"

namespace tdbu {

std::string_view calculus_name(Calculus c) {
  switch (c) {
    case Calculus::kAuto: return "auto";
    case Calculus::kResolution: return "resolution";
    case Calculus::kSuperposition: return "superposition";
  }
  return "auto";
}

std::string_view inference_rule_name(InferenceRule r) {
  switch (r) {
    case InferenceRule::kInput: return "input";
    case InferenceRule::kResolution: return "resolution";
    case InferenceRule::kFactoring: return "factoring";
    case InferenceRule::kSuperposition: return "superposition";
    case InferenceRule::kEqualityResolution: return "equality_resolution";
    case InferenceRule::kEqualityFactoring: return "equality_factoring";
    case InferenceRule::kRewriting: return "rewriting";
  }
  return "input";
}

bool is_expansion(InferenceRule r) {
  return r != InferenceRule::kInput && r != InferenceRule::kRewriting;
}

namespace {

std::vector<Literal> instantiate(const Substitution& s, std::span<const Literal> lits) {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (const Literal& l : lits) out.push_back(s.apply(l));
  return out;
}

// σ(lits) without the entries at `skip`.
void append_except(const Substitution& s, std::span<const Literal> lits,
                   std::initializer_list<std::size_t> skip, std::vector<Literal>& out) {
  for (std::size_t i = 0; i < lits.size(); ++i)
    if (std::find(skip.begin(), skip.end(), i) == skip.end())
      out.push_back(s.apply(lits[i]));
}

Clause derived(std::vector<Literal> lits) {
  return Clause(std::move(lits), ClauseRole::kDerived);
}

bool not_smaller(const TermOrder& ord, const Term& s, const Term& t) {
  Cmp c = ord.compare(s, t);
  return c == Cmp::kGreater || c == Cmp::kIncomparable;
}

using Path = std::vector<std::uint32_t>;

void subterm_paths(const Term& t, Path& prefix, std::vector<Path>& out) {
  if (t.is_var()) return;
  out.push_back(prefix);
  for (std::uint32_t i = 0; i < t.args().size(); ++i) {
    prefix.push_back(i);
    subterm_paths(t.arg(i), prefix, out);
    prefix.pop_back();
  }
}

const Term& at(const Term& t, const Path& p, std::size_t from = 0) {
  const Term* cur = &t;
  for (std::size_t i = from; i < p.size(); ++i) cur = &cur->arg(p[i]);
  return *cur;
}

Term replace(const Term& t, const Path& p, std::size_t depth, const Term& with) {
  if (depth == p.size()) return with;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[p[depth]] = replace(args[p[depth]], p, depth + 1, with);
  return Term::apply(t.functor(), std::move(args));
}

}  // namespace

std::vector<Clause> resolve(const Clause& c, const Clause& d, const TermOrder& ord,
                            bool equality_literals) {
  std::vector<Clause> out;
  Clause e = rename_apart(d);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Literal& a = c[i];
    if (!equality_literals && a.is_equality()) continue;
    for (std::size_t j = 0; j < e.size(); ++j) {
      const Literal& b = e[j];
      if (a.positive() == b.positive() || a.predicate() != b.predicate()) continue;
      auto s = unify(a.atom(), b.atom());
      if (!s) continue;
      if (ord.mode() != OrderingMode::kNone &&
          (!ord.maximal(instantiate(*s, c.literals()), i) ||
           !ord.maximal(instantiate(*s, e.literals()), j)))
        continue;
      std::vector<Literal> lits;
      append_except(*s, c.literals(), {i}, lits);
      append_except(*s, e.literals(), {j}, lits);
      out.push_back(derived(std::move(lits)));
    }
  }
  return out;
}

std::vector<Clause> factor(const Clause& c, Calculus calculus, const TermOrder& ord) {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (calculus == Calculus::kSuperposition && c[i].negative()) continue;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i].positive() != c[j].positive() || c[i].predicate() != c[j].predicate())
        continue;
      auto s = unify(c[i].atom(), c[j].atom());
      if (!s) continue;
      if (ord.mode() != OrderingMode::kNone &&
          !ord.maximal(instantiate(*s, c.literals()), i))
        continue;
      std::vector<Literal> lits;
      append_except(*s, c.literals(), {j}, lits);
      out.push_back(derived(std::move(lits)));
    }
  }
  return out;
}

std::vector<Clause> superpose(const Clause& from, const Clause& into,
                              const TermOrder& ord) {
  std::vector<Clause> out;
  Clause target = rename_apart(into);
  const bool ordered = ord.mode() != OrderingMode::kNone;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Literal& eq = from[i];
    if (!eq.is_equality() || eq.negative()) continue;
    for (int side = 0; side < 2; ++side) {
      const Term& l = side == 0 ? eq.lhs() : eq.rhs();
      const Term& r = side == 0 ? eq.rhs() : eq.lhs();
      if (l == r) continue;
      if (ordered && !not_smaller(ord, l, r)) continue;
      for (std::size_t j = 0; j < target.size(); ++j) {
        const Literal& lit = target[j];
        const Term& atom = lit.atom();
        std::vector<Path> paths;
        Path prefix;
        for (std::uint32_t a = 0; a < atom.args().size(); ++a) {
          prefix.assign(1, a);
          subterm_paths(atom.arg(a), prefix, paths);
        }
        for (const Path& p : paths) {
          auto s = unify(l, at(atom, p));
          if (!s) continue;
          if (ordered) {
            Term sl = s->apply(l), sr = s->apply(r);
            if (!not_smaller(ord, sl, sr)) continue;
            if (!ord.maximal(instantiate(*s, from.literals()), i)) continue;
            if (!ord.maximal(instantiate(*s, target.literals()), j)) continue;
            if (lit.is_equality()) {
              const Term& this_side = atom.arg(p[0]);
              const Term& other_side = atom.arg(1 - p[0]);
              if (!not_smaller(ord, s->apply(this_side), s->apply(other_side))) continue;
            }
          }
          Term rewritten = replace(atom, p, 0, r);
          std::vector<Literal> lits;
          append_except(*s, from.literals(), {i}, lits);
          append_except(*s, target.literals(), {j}, lits);
          lits.push_back(s->apply(Literal(lit.positive(), rewritten)));
          out.push_back(derived(std::move(lits)));
        }
      }
    }
  }
  return out;
}

std::vector<Clause> equality_resolve(const Clause& c, const TermOrder& ord) {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Literal& l = c[i];
    if (!l.is_equality() || l.positive()) continue;
    auto s = unify(l.lhs(), l.rhs());
    if (!s) continue;
    if (ord.mode() != OrderingMode::kNone &&
        !ord.maximal(instantiate(*s, c.literals()), i))
      continue;
    std::vector<Literal> lits;
    append_except(*s, c.literals(), {i}, lits);
    out.push_back(derived(std::move(lits)));
  }
  return out;
}

std::vector<Clause> equality_factor(const Clause& c, const TermOrder& ord) {
  std::vector<Clause> out;
  const bool ordered = ord.mode() != OrderingMode::kNone;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].is_equality() || c[i].negative()) continue;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j == i || !c[j].is_equality() || c[j].negative()) continue;
      // Without an ordering only the stored orientation of each pair in
      // clause order is used.
      if (!ordered && j < i) continue;
      int orientations = ordered ? 2 : 1;
      for (int oi = 0; oi < orientations; ++oi) {
        const Term& s = oi == 0 ? c[i].lhs() : c[i].rhs();
        const Term& t = oi == 0 ? c[i].rhs() : c[i].lhs();
        for (int oj = 0; oj < orientations; ++oj) {
          const Term& s2 = oj == 0 ? c[j].lhs() : c[j].rhs();
          const Term& t2 = oj == 0 ? c[j].rhs() : c[j].lhs();
          auto sub = unify(s, s2);
          if (!sub) continue;
          if (ordered) {
            if (!not_smaller(ord, sub->apply(s), sub->apply(t))) continue;
            if (!ord.maximal(instantiate(*sub, c.literals()), i)) continue;
          }
          std::vector<Literal> lits;
          append_except(*sub, c.literals(), {i, j}, lits);
          lits.push_back(sub->apply(Literal::equation(false, t, t2)));
          lits.push_back(sub->apply(Literal::equation(true, s2, t2)));
          out.push_back(derived(std::move(lits)));
        }
      }
    }
  }
  return out;
}

}  // namespace tdbu
