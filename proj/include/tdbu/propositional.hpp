// Propositional decision procedure for ground clause sets, used as an
// independent soundness oracle.

#pragma once

#include <vector>

#include "tdbu/kernel.hpp"

namespace tdbu {

// DPLL over the ground atoms. Equality literals are read as plain atoms
// unless `with_equality` adds ground instances of the equality axioms over
// the subterms occurring in the clauses, which decides ground equational
// entailment.
bool satisfiable(const std::vector<Clause>& clauses, bool with_equality = false);

// premises |= c, with c ground.
bool entails(const std::vector<Clause>& premises, const Clause& c,
             bool with_equality = false);

// Ground instances of reflexivity, symmetry, transitivity and congruence
// over all subterms of `clauses`.
std::vector<Clause> ground_equality_instances(const std::vector<Clause>& clauses);

}  // namespace tdbu
