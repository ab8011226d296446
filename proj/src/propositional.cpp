#include "tdbu/propositional.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tdbu {

namespace {

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

class Dpll {
 public:
  explicit Dpll(const std::vector<Clause>& clauses) {
    for (const Clause& c : clauses) {
      if (!c.is_ground()) throw std::invalid_argument("non-ground clause " + to_string(c));
      std::vector<int> lits;
      for (const Literal& l : c.literals()) {
        auto [it, fresh] = atoms_.emplace(l.atom(), static_cast<int>(atoms_.size()) + 1);
        (void)fresh;
        lits.push_back(l.positive() ? it->second : -it->second);
      }
      clauses_.push_back(std::move(lits));
    }
    value_.assign(atoms_.size() + 1, 0);
  }

  bool solve() { return search(); }

 private:
  int eval(int lit) const {
    int v = value_[std::abs(lit)];
    return lit > 0 ? v : -v;
  }

  // Unit propagation; returns false on conflict. Assigned atoms go to trail.
  bool propagate(std::vector<int>& trail) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : clauses_) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (int l : c) {
          int e = eval(l);
          if (e > 0) {
            sat = true;
            break;
          }
          if (e == 0) {
            ++unassigned;
            last = l;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          value_[std::abs(last)] = last > 0 ? 1 : -1;
          trail.push_back(std::abs(last));
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    std::vector<int> trail;
    bool ok = propagate(trail);
    if (ok) {
      int pick = 0;
      for (std::size_t a = 1; a < value_.size(); ++a)
        if (value_[a] == 0) {
          pick = static_cast<int>(a);
          break;
        }
      if (pick == 0) return true;
      for (int v : {1, -1}) {
        value_[pick] = v;
        if (search()) return true;
        value_[pick] = 0;
      }
    }
    for (int a : trail) value_[a] = 0;
    return false;
  }

  std::unordered_map<Term, int, TermHash> atoms_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> value_;
};

void collect_subterms(const Term& t, std::vector<Term>& out) {
  if (std::find(out.begin(), out.end(), t) != out.end()) return;
  for (const Term& a : t.args()) collect_subterms(a, out);
  out.push_back(t);
}

}  // namespace

std::vector<Clause> ground_equality_instances(const std::vector<Clause>& clauses) {
  std::vector<Term> terms;
  std::vector<Term> atoms;
  for (const Clause& c : clauses)
    for (const Literal& l : c.literals()) {
      if (std::find(atoms.begin(), atoms.end(), l.atom()) == atoms.end())
        atoms.push_back(l.atom());
      for (const Term& a : l.atom().args()) collect_subterms(a, terms);
    }
  auto eq = [](bool pos, const Term& a, const Term& b) {
    return Literal::equation(pos, a, b);
  };
  std::vector<Clause> out;
  for (const Term& s : terms) out.push_back(Clause({eq(true, s, s)}));
  for (const Term& s : terms)
    for (const Term& t : terms) {
      if (s == t) continue;
      out.push_back(Clause({eq(false, s, t), eq(true, t, s)}));
      for (const Term& u : terms)
        if (u != s && u != t)
          out.push_back(Clause({eq(false, s, t), eq(false, t, u), eq(true, s, u)}));
    }
  auto congruence = [&](const Term& x, const Term& y, bool predicate) {
    if (x == y || x.functor() != y.functor()) return;
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < x.args().size(); ++i)
      if (x.arg(i) != y.arg(i)) lits.push_back(eq(false, x.arg(i), y.arg(i)));
    if (predicate) {
      lits.push_back(Literal(false, x));
      lits.push_back(Literal(true, y));
    } else {
      lits.push_back(eq(true, x, y));
    }
    out.push_back(Clause(std::move(lits)));
  };
  for (const Term& x : terms)
    for (const Term& y : terms)
      if (!x.args().empty()) congruence(x, y, false);
  for (const Term& x : atoms)
    for (const Term& y : atoms)
      if (!x.functor().is_equality() && !x.args().empty()) congruence(x, y, true);
  return out;
}

bool satisfiable(const std::vector<Clause>& clauses, bool with_equality) {
  if (!with_equality) return Dpll(clauses).solve();
  std::vector<Clause> all = clauses;
  std::vector<Clause> extra = ground_equality_instances(clauses);
  all.insert(all.end(), extra.begin(), extra.end());
  return Dpll(all).solve();
}

bool entails(const std::vector<Clause>& premises, const Clause& c, bool with_equality) {
  std::vector<Clause> all = premises;
  for (const Literal& l : c.literals()) all.push_back(Clause({l.complement()}));
  return !satisfiable(all, with_equality);
}

}  // namespace tdbu
