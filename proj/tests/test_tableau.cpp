#include <doctest.h>

#include "support.hpp"
#include "tdbu/propositional.hpp"
#include "tdbu/tableau.hpp"

using namespace tdbu;
using namespace tdbu::test;

TEST_CASE("start, extension and reduction") {
  Problem p = fixture("ex21");
  Tableau t;
  REQUIRE(t.start(p.clauses[0]));
  CHECK(t.inferences() == 1);
  REQUIRE(t.open_leaves().size() == 1);
  CHECK(to_string(t.subgoal_clause()) == "~g");

  const Clause& def = p.clauses[1];
  REQUIRE(t.extend(t.open_leaves()[0], def, index_of(def, "g")));
  CHECK(t.inferences() == 2);
  CHECK(to_string(t.subgoal_clause()) == "~p1 | ~p2");
  CHECK(t.check_invariants(p.clauses).empty());

  Tableau r;
  Clause c = clause("p | q");
  Clause d = clause("~p | ~q");
  REQUIRE(r.start(c));
  std::uint32_t leaf_p = r.open_leaves()[0];
  REQUIRE(r.literal(leaf_p).positive());
  REQUIRE(r.extend(leaf_p, d, index_of(d, "~p")));
  // The open ~q below p can only close against an ancestor q: none here.
  std::uint32_t under = r.open_leaves()[0];
  CHECK_FALSE(r.reduce(under, r.ancestors(under).front()));

  Tableau s;
  REQUIRE(s.start(clause("~p | p")));
  auto leaves = s.open_leaves();
  REQUIRE(leaves.size() == 2);
  Clause pq = clause("p | q");
  REQUIRE(s.literal(leaves[0]).negative());
  REQUIRE(s.extend(leaves[0], pq, index_of(pq, "p")));
  std::uint32_t q_leaf = s.open_leaves()[0];
  CHECK_FALSE(s.reduce(q_leaf, s.ancestors(q_leaf).front()));
}

TEST_CASE("reduction closes against a complementary ancestor") {
  Tableau t;
  REQUIRE(t.start(clause("~p")));
  Clause taut = clause("p | ~p");
  REQUIRE(t.extend(t.open_leaves()[0], taut, index_of(taut, "p")));
  std::uint32_t leaf = t.open_leaves()[0];
  REQUIRE(t.literal(leaf).negative());
  auto anc = t.ancestors(leaf);
  REQUIRE(anc.size() == 1);
  Tableau::Mark m = t.mark();
  // ~p below ~p is not complementary.
  CHECK_FALSE(t.reduce(leaf, anc[0]));
  t.undo(m);
  Tableau u;
  REQUIRE(u.start(clause("p")));
  Clause c1 = clause("~p | ~p2"), c2 = clause("p2 | ~p");
  REQUIRE(u.extend(u.open_leaves()[0], c1, index_of(c1, "~p")));
  REQUIRE(u.extend(u.open_leaves()[0], c2, index_of(c2, "p2")));
  std::uint32_t deep = u.open_leaves()[0];
  REQUIRE(u.literal(deep).negative());
  CHECK(u.reduce(deep, u.ancestors(deep).front()));
  CHECK(u.closed());
}

TEST_CASE("bounds") {
  Tableau t;
  Bound inference{BoundKind::kInference};
  Bound depth{BoundKind::kDepth};
  Bound weighted{BoundKind::kWeightedDepth};
  CHECK(within_bound(t, inference, 0));
  CHECK(within_bound(t, depth, 0));
  CHECK(within_bound(t, weighted, 0));

  REQUIRE(t.start(clause("~a")));
  Clause ab = clause("a | ~b"), bc = clause("b | ~c");
  REQUIRE(t.extend(t.open_leaves()[0], ab, index_of(ab, "a")));
  REQUIRE(t.extend(t.open_leaves()[0], bc, index_of(bc, "b")));
  CHECK(t.inferences() == 3);
  CHECK_FALSE(within_bound(t, inference, 2));
  CHECK(within_bound(t, inference, 3));
  CHECK(t.max_inner_depth() == 2);
  CHECK(within_bound(t, depth, 2));
  CHECK_FALSE(within_bound(t, depth, 1));

  CHECK(weighted.depth_cap(4) == 2);
  CHECK(weighted.inference_cap(4) == 4);
  CHECK(weighted.depth_cap(5) == 3);
}

TEST_CASE("prove closes small problems") {
  Problem p = problem("cnf(g, negated_conjecture, ~g). cnf(f, axiom, g).");
  ProveResult r = prove(p, {});
  REQUIRE(r.closed());
  CHECK(std::get<Closed>(r.outcome).proof.steps.size() == 2);

  Problem ex41 = add_equality_axioms(fixture("ex41"));
  ProveOptions o;
  o.limits.max_resource = 6;
  ProveResult e = prove(ex41, o);
  REQUIRE(e.closed());
  const TableauProof& proof = std::get<Closed>(e.outcome).proof;
  CHECK(proof.resource <= 6);
  auto replayed = replay(proof, ex41.clauses);
  REQUIRE(replayed);
  CHECK(replayed->check_invariants(ex41.clauses).empty());
}

TEST_CASE("prove on the nine clause set") {
  Problem p = fixture("thm33");
  REQUIRE_FALSE(satisfiable(p.clauses));
  ProveResult r = prove(p, {});
  REQUIRE(r.closed());
  const TableauProof& proof = std::get<Closed>(r.outcome).proof;
  auto t = replay(proof, p.clauses);
  REQUIRE(t);
  CHECK(t->closed());
  CHECK(t->check_invariants(p.clauses).empty());
}

TEST_CASE("prove reports exhaustion and limits") {
  Problem sat = fixture("ex21");
  ProveResult r = prove(sat, {});
  CHECK(std::holds_alternative<Exhausted>(r.outcome));

  Problem loop = problem(
      "cnf(g, negated_conjecture, ~p(a)). cnf(s, axiom, p(X) | ~p(f(X))).");
  ProveOptions o;
  o.limits.max_resource = 5;
  ProveResult l = prove(loop, o);
  REQUIRE(std::holds_alternative<LimitReached>(l.outcome));
  CHECK(std::get<LimitReached>(l.outcome).last_complete == 5);

  Problem positive = problem("cnf(a, axiom, p).");
  CHECK(std::holds_alternative<Exhausted>(prove(positive, {}).outcome));
}

TEST_CASE("enumeration on the goal with two definitions") {
  Problem p = fixture("ex21");
  const std::set<std::string> expected = texts(std::vector{clause("~p1 | ~p2"), clause("~q1 | ~q2")});
  for (StartMode mode : {StartMode::kNegative, StartMode::kAll}) {
    EnumerateOptions o;
    o.k = 2;
    o.mode = mode;
    EnumerateResult r = enumerate_subgoal_clauses(p, o);
    CHECK(texts(r.records | std::views::transform(&SubgoalClauseRecord::clause)) == expected);
    CHECK_FALSE(r.proof_found);
    for (const auto& rec : r.records) CHECK(rec.inferences == 2);
  }
  EnumerateOptions one;
  one.k = 1;
  CHECK(enumerate_subgoal_clauses(p, one).records.empty());
}

TEST_CASE("enumeration on the nine clause set") {
  Problem p = fixture("thm33");
  EnumerateOptions o;
  o.k = 2;
  o.mode = StartMode::kNegative;
  EnumerateResult r = enumerate_subgoal_clauses(p, o);
  CHECK(texts(r.records | std::views::transform(&SubgoalClauseRecord::clause)) ==
        texts(std::vector{clause("~l2 | l6 | l7"), clause("~l2 | l6 | ~l7"),
                          clause("l1 | ~l3 | ~l4"), clause("~l1 | ~l3 | ~l4"),
                          clause("~l2 | ~l5 | ~l6")}));
}

TEST_CASE("enumeration options") {
  Problem p = fixture("thm33");
  EnumerateOptions capped;
  capped.k = 4;
  capped.cap = 1;
  EnumerateResult c = enumerate_subgoal_clauses(p, capped);
  CHECK(c.records.size() == 1);
  CHECK(c.truncated);

  EnumerateOptions from;
  from.k = 2;
  from.start_set = std::vector<Clause>{clause("~l3")};
  from.start_offsets = {5};
  EnumerateResult s = enumerate_subgoal_clauses(p, from);
  REQUIRE_FALSE(s.records.empty());
  for (const auto& rec : s.records) {
    CHECK(rec.inferences >= 6);
    CHECK(rec.inferences <= 7);
  }

  EnumerateOptions proof;
  proof.k = 2;
  EnumerateResult closed = enumerate_subgoal_clauses(
      problem("cnf(g, negated_conjecture, ~g). cnf(f, axiom, g)."), proof);
  CHECK(closed.proof_found);
  CHECK(closed.records.empty());
}

TEST_CASE("property: enumerated tableaux respect the invariants and entailment") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 40; ++round) {
    Problem p = as_problem(random_ground_set(rng, 4, 6, 3));
    EnumerateOptions o;
    o.k = 3;
    o.mode = StartMode::kAll;
    EnumerateResult r = enumerate_subgoal_clauses(p, o);
    for (const auto& rec : r.records) {
      CHECK(rec.inferences <= 3);
      CHECK(entails(p.clauses, rec.clause));
      REQUIRE(rec.tableau_clauses.size() == rec.tableau_clause_sources.size());
      for (std::size_t i = 0; i < rec.tableau_clauses.size(); ++i) {
        const Clause* src = p.find(rec.tableau_clause_sources[i]);
        REQUIRE(src);
        CHECK(subsumes(*src, rec.tableau_clauses[i]));
      }
    }
  }
}

TEST_CASE("copying expansion leaves the original untouched") {
  Problem p = fixture("ex21");
  Tableau t;
  auto s = expand_tableau(t, Rule::kStart, 0, &p.clauses[0]);
  REQUIRE(s);
  CHECK(t.trivial());
  auto e = expand_tableau(*s, Rule::kExtension, s->open_leaves()[0], &p.clauses[1],
                          index_of(p.clauses[1], "g"));
  REQUIRE(e);
  CHECK(s->inferences() == 1);
  CHECK(e->inferences() == 2);
  CHECK(e->check_invariants(p.clauses).empty());
}
