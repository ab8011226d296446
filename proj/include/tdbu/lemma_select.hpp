// Filters that pick unit lemmas from the saturation engine's facts for
// transfer to the connection tableau engine.

#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdbu/saturation.hpp"
#include "tdbu/tableau.hpp"

namespace tdbu {

struct GammaParams {
  double numerator_offset = 1.0;
  double denominator_offset = 1.0;
};

struct LemmaQuotas {
  std::size_t per_filter = 10;
  GammaParams gamma;
  // Filter (c) gate: false admits any applicable lemma, true only lemmas
  // with a positive score.
  bool require_positive = false;
};

struct LemmaCandidate {
  Clause fact;
  std::uint64_t epsilon = 0;
  std::uint64_t kappa = 0;
  std::uint64_t superposition_depth = 0;
};

struct SelectedLemma {
  Clause clause;
  // (filter name, score) for each filter that picked the lemma.
  std::vector<std::pair<std::string, double>> reasons;
};

// kappa - epsilon.
double psi_s(const LemmaCandidate& c);

// Superposition steps along the derivation of `id`, memoized in `memo`.
std::uint64_t psi_d(const ProverState& state, ClauseId id,
                    std::unordered_map<ClauseId, std::uint64_t>& memo);

// min(1, (a + distinct vars) / (b + symbol count + depth)).
double gamma(const Literal& l, const GammaParams& params = {});

struct Applicability {
  // Indices into the subgoal clause of the unified literals.
  std::vector<std::size_t> unified;
  double score = 0.0;
};

// Score of using the unit `lemma` against subgoal clause `s`: the best
// set U of literals of s simultaneously unifiable with the complement of
// the lemma, and the gamma difference of the remaining and removed
// literals minus the remaining count. Empty when no literal is unifiable.
std::optional<Applicability> psi_c(const Clause& lemma, const Clause& s,
                                   const GammaParams& params = {});

std::vector<LemmaCandidate> lemma_candidates(const ProverState& state,
                                             const std::vector<ClauseId>& facts);

// Filter (a): top per_filter by psi_s. Filter (b), only when the problem
// has equality: top per_filter by psi_d. Filter (c): the best applicable
// lemma of each subgoal clause of `pool` in order, until per_filter
// distinct lemmas are picked.
std::vector<SelectedLemma> select_lemmas(const std::vector<LemmaCandidate>& candidates,
                                         const std::vector<SubgoalClauseRecord>& pool,
                                         const LemmaQuotas& quotas, bool has_equality);

}  // namespace tdbu
