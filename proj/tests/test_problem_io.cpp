#include <doctest.h>

#include "support.hpp"

using namespace tdbu;
using namespace tdbu::test;

TEST_CASE("parse roles and goal") {
  Problem p = problem("cnf(g,negated_conjecture,(~g)). cnf(a1,axiom,(~p1|~p2|g)).");
  REQUIRE(p.size() == 2);
  CHECK(p.clauses[0].role() == ClauseRole::kGoal);
  CHECK(p.names[1] == "a1");
  CHECK(texts(goal_clauses(p, StartMode::kNegative)) == std::set<std::string>{"~g"});
  CHECK(goal_clauses(p, StartMode::kAll).size() == 2);
}

TEST_CASE("parse equality") {
  Problem p = problem("cnf(e,axiom,(f(f(X)) = g(X))).");
  REQUIRE(p.size() == 1);
  CHECK(p.has_equality);
  CHECK(p.clauses[0].is_positive_unit());
  CHECK(p.clauses[0][0].is_equality());
  Problem q = problem("cnf(e,axiom, a != b).");
  CHECK(q.clauses[0][0].negative());
}

TEST_CASE("parse errors") {
  try {
    problem("cnf(bad,axiom,(p(a) | p(a,b))).");
    FAIL("expected an arity error");
  } catch (const ParseError& e) {
    CHECK(e.message().find("p") != std::string::npos);
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(problem("cnf(x, axiom, p(a)"), ParseError);
  CHECK_THROWS_AS(problem("cnf(x, lemma, p(a))."), ParseError);
  try {
    problem("% comment\ncnf(a, axiom, p(a)).\ncnf(b, axiom, p(a) | ).");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("comments, optional parentheses and $false") {
  Problem p = problem("% header\ncnf(a, axiom, p(X) | ~q(X)). % trailing\ncnf(e, axiom, $false).");
  REQUIRE(p.size() == 2);
  CHECK(p.clauses[1].empty());
}

TEST_CASE("serialize round trip") {
  Problem p = fixture("ex41");
  Problem q = parse_problem(serialize(p), p.name);
  REQUIRE(q.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(variant_equal(p.clauses[i], q.clauses[i]));
    CHECK(p.clauses[i].role() == q.clauses[i].role());
  }
  CHECK(serialize(Problem{}).empty());
  CHECK(serialize(p).find("negated_conjecture") != std::string::npos);
}

TEST_CASE("equality axioms") {
  Problem f = problem("cnf(a, axiom, f(a) = b).");
  CHECK(add_equality_axioms(f).size() == f.size() + 3 + 1);
  Problem p = problem("cnf(a, axiom, p(a, b)). cnf(b, axiom, a = b).");
  CHECK(add_equality_axioms(p).size() == p.size() + 3 + 2);
  Problem none = problem("cnf(a, axiom, p(a)).");
  CHECK(add_equality_axioms(none).size() == none.size());
}

TEST_CASE("goal clauses of the fixtures") {
  CHECK(texts(goal_clauses(fixture("ex21"), StartMode::kNegative)) ==
        std::set<std::string>{"~g"});
  CHECK(texts(goal_clauses(fixture("thm33"), StartMode::kNegative)) ==
        std::set<std::string>{"~l2 | ~l4"});
}

TEST_CASE("ids are unique and stable") {
  Problem p = fixture("thm33");
  std::set<ClauseId> ids;
  for (const Clause& c : p.clauses) ids.insert(c.id());
  CHECK(ids.size() == p.size());
  CHECK(p.find(p.clauses[3].id()) == &p.clauses[3]);
}
