// Helpers shared by the unit tests.

#pragma once

#include <algorithm>
#include <random>
#include <ranges>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdbu/kernel.hpp"
#include "tdbu/problem_io.hpp"

#ifndef TDBU_DATA_DIR
#define TDBU_DATA_DIR "data/problems"
#endif

namespace tdbu::test {

inline Problem problem(std::string_view text, std::string name = "test") {
  return parse_problem(text, std::move(name));
}

inline Problem fixture(const std::string& name) {
  return load_problem(std::string(TDBU_DATA_DIR) + "/" + name + ".p");
}

inline Clause clause(const std::string& text) {
  return parse_problem("cnf(c, axiom, " + text + ").").clauses.at(0);
}

inline Literal literal(const std::string& text) { return clause(text)[0]; }

inline Term term(const std::string& text) { return literal("p(" + text + ")").atom().arg(0); }

// Position of the literal printed as `text`; literals are kept sorted.
inline std::size_t index_of(const Clause& c, const std::string& text) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (to_string(c[i]) == text) return i;
  throw std::out_of_range("no literal " + text);
}

template <class Range>
std::set<std::string> texts(const Range& clauses) {
  std::set<std::string> out;
  for (const auto& c : clauses) out.insert(to_string(c));
  return out;
}

// Random ground clause sets over atoms a0..a<atoms-1>.
inline std::vector<Clause> random_ground_set(std::mt19937& rng, int atoms, int clauses,
                                             int max_width) {
  std::uniform_int_distribution<int> atom(0, atoms - 1), width(1, max_width), sign(0, 1);
  std::vector<Clause> out;
  for (int i = 0; i < clauses; ++i) {
    std::vector<Literal> lits;
    int w = width(rng);
    for (int j = 0; j < w; ++j) {
      Symbol s = Symbol::intern("a" + std::to_string(atom(rng)), 0, SymbolKind::kPredicate);
      lits.emplace_back(sign(rng) == 1, Term::constant(s));
    }
    out.emplace_back(std::move(lits));
  }
  return out;
}

inline Problem as_problem(const std::vector<Clause>& clauses, std::string name = "random") {
  Problem p;
  p.name = std::move(name);
  for (const Clause& c : clauses) {
    Clause copy = c;
    copy.set_role(c.is_negative() ? ClauseRole::kGoal : ClauseRole::kAxiom);
    p.add(copy);
  }
  return p;
}

}  // namespace tdbu::test
