#include "tdbu/subgoal_select.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tdbu {

double default_clause_weight(const Clause& c) {
  return static_cast<double>(measures(c).symbol_count);
}

namespace {

void count_functions(const Term& t, std::map<Symbol, int>& counts, int sign) {
  if (t.is_var()) return;
  counts[t.functor()] += sign;
  for (const Term& a : t.args()) count_functions(a, counts, sign);
}

}  // namespace

double sim(const Clause& s, const Clause& unit) {
  if (!unit.is_unit()) return 0.0;
  const Literal& u = unit[0];
  double best = 0.0;
  for (const Literal& l : s.literals()) {
    if (l.predicate() != u.predicate() || l.positive() == u.positive()) continue;
    std::map<Symbol, int> counts;
    for (const Term& a : l.atom().args()) count_functions(a, counts, 1);
    for (const Term& a : u.atom().args()) count_functions(a, counts, -1);
    int mismatch = 0;
    for (const auto& [sym, n] : counts) mismatch += std::abs(n);
    int gap = std::abs(static_cast<int>(l.atom().depth()) - static_cast<int>(u.atom().depth()));
    best = std::max(best, 1.0 / (1.0 + mismatch + gap));
  }
  return best;
}

std::uint32_t theta(const Clause& s) {
  Measures m = measures(s);
  return m.var_occurrences + 2 * (m.symbol_count - m.var_occurrences);
}

double psi(const SubgoalClauseRecord& r, const ClauseWeight& h,
           const std::vector<Clause>& units, const SelectionWeights& w) {
  double max_h = 0.0;
  for (const Clause& c : r.tableau_clauses) max_h = std::max(max_h, h(c));
  double max_sim = 0.0;
  for (const Clause& u : units) max_sim = std::max(max_sim, sim(r.clause, u));
  return w.alpha1 * r.inferences + w.alpha2 * max_h + w.alpha3 * max_sim;
}

double phi(const SubgoalClauseRecord& r, const ClauseWeight& h,
           const std::vector<Clause>& units, const SelectionWeights& w) {
  return psi(r, h, units, w) - theta(r.clause);
}

std::vector<Clause> unit_clauses(const Problem& p) {
  std::vector<Clause> out;
  for (const Clause& c : p.clauses)
    if (c.is_unit()) out.push_back(c);
  return out;
}

std::vector<std::size_t> rank_records(const std::vector<SubgoalClauseRecord>& records,
                                      const std::vector<double>& scores) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint32_t> thetas;
  std::vector<std::string> texts;
  for (const auto& r : records) {
    thetas.push_back(theta(r.clause));
    texts.push_back(to_string(r.clause));
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (thetas[a] != thetas[b]) return thetas[a] < thetas[b];
    return texts[a] < texts[b];
  });
  return order;
}

EnumerateResult generate_variant1(const Problem& p, StartMode mode,
                                  const SelectionWeights& w, const SearchLimits& limits) {
  EnumerateOptions o;
  o.k = w.k;
  o.mode = mode;
  o.cap = w.n_sg;
  o.limits = limits;
  return enumerate_subgoal_clauses(p, o);
}

EnumerateResult generate_variant2(const Problem& p, StartMode mode, const ClauseWeight& h,
                                  const SelectionWeights& w, const SearchLimits& limits) {
  EnumerateOptions first;
  first.k = w.k1;
  first.mode = mode;
  first.limits = limits;
  EnumerateResult a = enumerate_subgoal_clauses(p, first);
  if (w.n_ref == 0 || a.records.empty()) return a;

  std::vector<Clause> units = unit_clauses(p);
  std::vector<double> scores;
  for (const auto& r : a.records) scores.push_back(psi(r, h, units, w));
  std::vector<std::size_t> order = rank_records(a.records, scores);

  EnumerateOptions second;
  second.k = w.k2;
  second.mode = mode;
  second.limits = limits;
  second.start_set.emplace();
  for (std::size_t i = 0; i < std::min(w.n_ref, order.size()); ++i) {
    const SubgoalClauseRecord& m = a.records[order[i]];
    Clause start = m.clause;
    start.set_id(0);
    second.start_set->push_back(start);
    second.start_offsets.push_back(m.inferences);
  }
  EnumerateResult b = enumerate_subgoal_clauses(p, second);

  VariantMap<std::size_t> seen;
  for (std::size_t i = 0; i < a.records.size(); ++i) seen.insert(a.records[i].clause, i);
  for (SubgoalClauseRecord& r : b.records) {
    if (std::size_t* at = seen.find(r.clause)) {
      if (r.inferences < a.records[*at].inferences) a.records[*at] = std::move(r);
      continue;
    }
    seen.insert(r.clause, a.records.size());
    a.records.push_back(std::move(r));
  }
  a.proof_found = a.proof_found || b.proof_found;
  a.truncated = a.truncated || b.truncated;
  a.tableaux += b.tableaux;
  return a;
}

std::vector<Clause> select_subgoal_clauses(const std::vector<SubgoalClauseRecord>& candidates,
                                           std::size_t m, const ClauseWeight& h,
                                           const std::vector<Clause>& units,
                                           const SelectionWeights& w) {
  std::vector<double> scores;
  for (const auto& r : candidates) scores.push_back(phi(r, h, units, w));
  std::vector<std::size_t> order = rank_records(candidates, scores);
  std::vector<Clause> out;
  for (std::size_t i = 0; i < std::min(m, order.size()); ++i) {
    Clause c = candidates[order[i]].clause;
    c.set_role(ClauseRole::kAxiom);
    c.set_id(0);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tdbu
