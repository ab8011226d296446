#include <doctest.h>

#include "support.hpp"

using namespace tdbu;
using namespace tdbu::test;

TEST_CASE("unify") {
  Literal px = literal("p(X)");
  auto s = unify(px, literal("p(a)"));
  REQUIRE(s);
  CHECK(s->size() == 1);
  CHECK(to_string(s->apply(px)) == "p(a)");

  CHECK_FALSE(unify(literal("p(X)"), literal("q(a)")));

  Clause occurs = clause("p(X, f(X)) | q(Y, Y)");
  Literal a = occurs[0];
  Literal b(true, Term::apply(a.predicate(), {occurs[1].atom().arg(0), occurs[1].atom().arg(0)}));
  CHECK_FALSE(unify(a, b));
}

TEST_CASE("match is one-directional") {
  CHECK(match(term("X"), term("f(a)")));
  CHECK_FALSE(match(term("f(a)"), term("X")));
  Clause c = clause("p(X, X)");
  CHECK_FALSE(match(c[0].atom(), clause("p(a, b)")[0].atom()));
}

TEST_CASE("apply") {
  Clause c = clause("p(X, Y)");
  Substitution s;
  s.bind(variables(c)[0], term("a"));
  Clause inst = s.apply(c);
  CHECK(to_string(inst) == "p(a,X0)");
  CHECK(to_string(Substitution{}.apply(c)) == to_string(c));

  Clause collapse = clause("p(X) | p(a)");
  Substitution t;
  t.bind(variables(collapse)[0], term("a"));
  CHECK(t.apply(collapse).size() == 1);
}

TEST_CASE("rename_apart") {
  Clause c = clause("p(X) | q(X)");
  std::vector<Var> used = variables(c);
  Clause r = rename_apart(c, used);
  CHECK(variant_equal(c, r));
  std::vector<Var> fresh = variables(r);
  REQUIRE(fresh.size() == 1);
  CHECK(fresh[0] != used[0]);

  Clause g = clause("p(a) | ~q(b)");
  CHECK(to_string(rename_apart(g)) == to_string(g));
}

TEST_CASE("variant_equal") {
  CHECK(variant_equal(clause("p(X) | q(X)"), clause("p(Y) | q(Y)")));
  CHECK_FALSE(variant_equal(clause("p(X) | q(X)"), clause("p(Y) | q(Z)")));
  Clause c = clause("~p(X, f(Y)) | X = Y");
  CHECK(variant_equal(c, c));
  CHECK(variant_hash(c) == variant_hash(rename_apart(c)));
}

TEST_CASE("subsumes") {
  CHECK(subsumes(clause("p(X)"), clause("p(a) | q(b)")));
  CHECK_FALSE(subsumes(clause("p(a)"), clause("p(X)")));
  CHECK_FALSE(subsumes(clause("p(X) | q(X)"), clause("p(a) | q(b)")));
  // Injective: two literals cannot both map onto one.
  CHECK_FALSE(subsumes(clause("p(X) | p(Y)"), clause("p(a)")));
  // Shared variables are renamed apart first.
  Clause c = clause("p(X, a)");
  CHECK(subsumes(c, c));
}

TEST_CASE("is_tautology") {
  CHECK(is_tautology(clause("p(a) | ~p(a)")));
  CHECK(is_tautology(clause("f(X) = f(X)")));
  CHECK_FALSE(is_tautology(clause("p(X) | ~p(a)")));
}

TEST_CASE("measures") {
  Measures m = measures(literal("~p(f(X), a)"));
  CHECK(m.symbol_count == 4);
  CHECK(m.var_occurrences == 1);
  CHECK(m.distinct_vars == 1);
  CHECK(m.max_depth == 3);
  CHECK(measures(literal("p(a)")).symbol_count == 2);
  CHECK(measures(Clause{}) == Measures{});
}

TEST_CASE("clause printing normalizes variables") {
  CHECK(to_string(clause("q(Z) | p(Z, W)")) == to_string(clause("q(A) | p(A, B)")));
  CHECK(to_string(Clause{}) == "$false");
}

namespace {

Term random_term(std::mt19937& rng, int depth, const std::vector<Term>& vars) {
  static const Symbol f = Symbol::intern("f", 2, SymbolKind::kFunction);
  static const Symbol g = Symbol::intern("g", 1, SymbolKind::kFunction);
  static const Symbol a = Symbol::intern("a", 0, SymbolKind::kFunction);
  static const Symbol b = Symbol::intern("b", 0, SymbolKind::kFunction);
  int pick = std::uniform_int_distribution<int>(0, depth == 0 ? 2 : 4)(rng);
  switch (pick) {
    case 0: return vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
    case 1: return Term::constant(a);
    case 2: return Term::constant(b);
    case 3: return Term::apply(g, {random_term(rng, depth - 1, vars)});
    default:
      return Term::apply(f, {random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars)});
  }
}

}  // namespace

TEST_CASE("property: unifiers equate both sides and matches instantiate the pattern") {
  std::mt19937 rng(12345);
  std::vector<Term> vars;
  for (int i = 0; i < 3; ++i) vars.push_back(Term::variable(fresh_var()));
  int unified = 0;
  for (int i = 0; i < 2000; ++i) {
    Term s = random_term(rng, 4, vars), t = random_term(rng, 4, vars);
    if (auto u = unify(s, t)) {
      ++unified;
      CHECK(u->apply(s) == u->apply(t));
    }
    if (auto m = match(s, t)) CHECK(m->apply(s) == t);
  }
  CHECK(unified > 100);
}

TEST_CASE("property: renaming preserves variants and subsumption both ways") {
  std::mt19937 rng(7);
  std::vector<Term> vars;
  for (int i = 0; i < 3; ++i) vars.push_back(Term::variable(fresh_var()));
  Symbol p = Symbol::intern("p", 2, SymbolKind::kPredicate);
  for (int i = 0; i < 300; ++i) {
    std::vector<Literal> lits;
    for (int j = 0; j < 3; ++j)
      lits.emplace_back(j % 2 == 0, Term::apply(p, {random_term(rng, 2, vars),
                                                   random_term(rng, 2, vars)}));
    Clause c(std::move(lits));
    Clause r = rename_apart(c);
    CHECK(variant_equal(c, r));
    CHECK(variant_hash(c) == variant_hash(r));
    CHECK(subsumes(c, r));
    CHECK(subsumes(r, c));
  }
}
