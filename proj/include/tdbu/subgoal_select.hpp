// Scoring and selection of subgoal clauses for transfer to the saturation
// engine.

#pragma once

#include <functional>
#include <vector>

#include "tdbu/tableau.hpp"

namespace tdbu {

struct SelectionWeights {
  double alpha1 = 10.0;
  double alpha2 = 5.0;
  double alpha3 = 1.0;
  std::uint32_t k = 10;
  std::uint32_t k1 = 9;
  std::uint32_t k2 = 9;
  std::size_t n_sg = 500;
  std::size_t n_ref = 5;
  std::size_t m = 30;
};

using ClauseWeight = std::function<double(const Clause&)>;

// symbol_count, the saturation engine's default weight.
double default_clause_weight(const Clause& c);

// Structural similarity of S to the unit U in [0, 1]: the best literal of S
// with U's predicate and opposite polarity scores
// 1 / (1 + function symbol count mismatch + depth difference).
double sim(const Clause& s, const Clause& unit);

// Variable occurrences plus twice the function and predicate occurrences.
std::uint32_t theta(const Clause& s);

double psi(const SubgoalClauseRecord& r, const ClauseWeight& h,
           const std::vector<Clause>& units, const SelectionWeights& w);
double phi(const SubgoalClauseRecord& r, const ClauseWeight& h,
           const std::vector<Clause>& units, const SelectionWeights& w);

std::vector<Clause> unit_clauses(const Problem& p);

// Orders records by decreasing score, then increasing theta, then text.
std::vector<std::size_t> rank_records(const std::vector<SubgoalClauseRecord>& records,
                                      const std::vector<double>& scores);

// enumerate(k, cap n_sg).
EnumerateResult generate_variant1(const Problem& p, StartMode mode,
                                  const SelectionWeights& w,
                                  const SearchLimits& limits = {});

// enumerate(k1) plus a second enumeration of depth k2 started from the
// n_ref records of highest psi; variants are merged keeping the smaller
// inference count.
EnumerateResult generate_variant2(const Problem& p, StartMode mode, const ClauseWeight& h,
                                  const SelectionWeights& w,
                                  const SearchLimits& limits = {});

// The min(m, |candidates|) candidates of highest phi, as axioms.
std::vector<Clause> select_subgoal_clauses(const std::vector<SubgoalClauseRecord>& candidates,
                                           std::size_t m, const ClauseWeight& h,
                                           const std::vector<Clause>& units,
                                           const SelectionWeights& w);

}  // namespace tdbu
