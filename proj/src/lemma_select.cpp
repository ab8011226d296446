#include "tdbu/lemma_select.hpp"

#include <algorithm>
#include <numeric>

namespace tdbu {

double psi_s(const LemmaCandidate& c) {
  return static_cast<double>(c.kappa) - static_cast<double>(c.epsilon);
}

std::uint64_t psi_d(const ProverState& state, ClauseId id,
                    std::unordered_map<ClauseId, std::uint64_t>& memo) {
  if (auto it = memo.find(id); it != memo.end()) return it->second;
  // Iterative post-order; derivations can be deep.
  std::vector<std::pair<ClauseId, bool>> stack{{id, false}};
  while (!stack.empty()) {
    auto [cur, expanded] = stack.back();
    stack.pop_back();
    if (memo.count(cur)) continue;
    const DerivationRecord& r = state.record(cur);
    if (!expanded) {
      stack.emplace_back(cur, true);
      for (ClauseId p : r.premises)
        if (!memo.count(p)) stack.emplace_back(p, false);
      continue;
    }
    std::uint64_t v = 0;
    for (ClauseId p : r.premises) v += memo.at(p);
    if (r.rule == InferenceRule::kSuperposition) v += 1;
    memo[cur] = v;
  }
  return memo.at(id);
}

double gamma(const Literal& l, const GammaParams& params) {
  Measures m = measures(l);
  double v = (params.numerator_offset + m.distinct_vars) /
             (params.denominator_offset + m.symbol_count + m.max_depth);
  return std::min(1.0, v);
}

namespace {

struct Fit {
  std::vector<std::size_t> unified;
  double g = 0.0;
  Bindings bindings;
};

// Unifies the complement of `lit` with every literal of `s` selected by
// `subset`; returns G or a negative value when not unifiable.
double try_subset(const Literal& lit, const Clause& s, const std::vector<std::size_t>& subset,
                  Bindings& b) {
  for (std::size_t i : subset) {
    const Literal& u = s[i];
    if (u.positive() == lit.positive() || u.predicate() != lit.predicate()) return -1.0;
    if (!b.unify(lit.atom(), u.atom())) return -1.0;
  }
  double growth = 0.0;
  for (std::size_t i : subset) {
    growth += static_cast<double>(measures(b.resolve(s[i])).symbol_count) -
              static_cast<double>(measures(s[i]).symbol_count);
  }
  return static_cast<double>(subset.size()) / (1.0 + growth);
}

bool better(double g, std::size_t size, const Fit& best) {
  if (best.unified.empty()) return true;
  if (g != best.g) return g > best.g;
  return size > best.unified.size();
}

}  // namespace

std::optional<Applicability> psi_c(const Clause& lemma, const Clause& s,
                                   const GammaParams& params) {
  if (!lemma.is_unit()) return std::nullopt;
  Literal lit = rename_apart(lemma[0]);
  const std::size_t n = s.size();
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < n; ++i)
    if (s[i].positive() != lit.positive() && s[i].predicate() == lit.predicate())
      usable.push_back(i);
  if (usable.empty()) return std::nullopt;

  Fit best;
  auto consider = [&](const std::vector<std::size_t>& subset) {
    Bindings b;
    double g = try_subset(lit, s, subset, b);
    if (g < 0.0 || !better(g, subset.size(), best)) return false;
    best.unified = subset;
    best.g = g;
    best.bindings = std::move(b);
    return true;
  };

  if (usable.size() <= 12) {
    // Subsets in increasing bitmask order, so the first of equal fits wins.
    for (std::uint32_t mask = 1; mask < (1u << usable.size()); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t j = 0; j < usable.size(); ++j)
        if (mask & (1u << j)) subset.push_back(usable[j]);
      consider(subset);
    }
  } else {
    std::vector<std::size_t> current;
    for (bool grown = true; grown;) {
      grown = false;
      std::vector<std::size_t> pick;
      double pick_g = -1.0;
      for (std::size_t i : usable) {
        if (std::find(current.begin(), current.end(), i) != current.end()) continue;
        std::vector<std::size_t> trial = current;
        trial.push_back(i);
        std::sort(trial.begin(), trial.end());
        Bindings b;
        double g = try_subset(lit, s, trial, b);
        if (g > pick_g) {
          pick_g = g;
          pick = trial;
        }
      }
      if (pick_g >= 0.0 && (current.empty() || pick_g >= best.g)) {
        current = pick;
        consider(current);
        grown = true;
      }
    }
  }
  if (best.unified.empty()) return std::nullopt;

  Applicability out;
  out.unified = best.unified;
  double score = 0.0;
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = gamma(best.bindings.resolve(s[i]), params);
    if (std::binary_search(best.unified.begin(), best.unified.end(), i)) {
      score -= g;
    } else {
      score += g;
      ++remaining;
    }
  }
  out.score = score - static_cast<double>(remaining);
  return out;
}

std::vector<LemmaCandidate> lemma_candidates(const ProverState& state,
                                             const std::vector<ClauseId>& facts) {
  std::unordered_map<ClauseId, std::uint64_t> memo;
  std::vector<LemmaCandidate> out;
  for (ClauseId id : facts) {
    const DerivationRecord& r = state.record(id);
    LemmaCandidate c;
    c.fact = state.clause(id);
    c.epsilon = r.epsilon;
    c.kappa = r.kappa;
    c.superposition_depth = psi_d(state, id, memo);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

std::vector<std::size_t> top_by(const std::vector<LemmaCandidate>& cands,
                                const std::vector<std::string>& texts,
                                const std::vector<double>& score, std::size_t n) {
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return texts[a] < texts[b];
  });
  if (order.size() > n) order.resize(n);
  return order;
}

}  // namespace

std::vector<SelectedLemma> select_lemmas(const std::vector<LemmaCandidate>& candidates,
                                         const std::vector<SubgoalClauseRecord>& pool,
                                         const LemmaQuotas& quotas, bool has_equality) {
  std::vector<std::string> texts;
  for (const auto& c : candidates) texts.push_back(to_string(c.fact));

  std::vector<SelectedLemma> out;
  std::vector<std::ptrdiff_t> slot(candidates.size(), -1);
  auto pick = [&](std::size_t i, const char* filter, double score) {
    if (slot[i] < 0) {
      slot[i] = static_cast<std::ptrdiff_t>(out.size());
      SelectedLemma s;
      s.clause = candidates[i].fact;
      s.clause.set_id(0);
      s.clause.set_role(ClauseRole::kAxiom);
      out.push_back(std::move(s));
    }
    out[slot[i]].reasons.emplace_back(filter, score);
  };

  std::vector<double> s_scores;
  for (const auto& c : candidates) s_scores.push_back(psi_s(c));
  for (std::size_t i : top_by(candidates, texts, s_scores, quotas.per_filter))
    pick(i, "psi_s", s_scores[i]);

  if (has_equality) {
    std::vector<double> d_scores;
    for (const auto& c : candidates)
      d_scores.push_back(static_cast<double>(c.superposition_depth));
    for (std::size_t i : top_by(candidates, texts, d_scores, quotas.per_filter))
      pick(i, "psi_d", d_scores[i]);
  }

  std::vector<bool> by_c(candidates.size(), false);
  std::size_t picked_c = 0;
  for (const SubgoalClauseRecord& r : pool) {
    if (picked_c >= quotas.per_filter) break;
    std::optional<std::size_t> best;
    double best_score = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      auto a = psi_c(candidates[i].fact, r.clause, quotas.gamma);
      if (!a) continue;
      if (quotas.require_positive && a->score <= 0.0) continue;
      if (!best || a->score > best_score ||
          (a->score == best_score && texts[i] < texts[*best])) {
        best = i;
        best_score = a->score;
      }
    }
    if (!best || by_c[*best]) continue;
    by_c[*best] = true;
    ++picked_c;
    pick(*best, "psi_c", best_score);
  }
  return out;
}

}  // namespace tdbu
