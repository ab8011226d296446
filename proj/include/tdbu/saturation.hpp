// Given-clause saturation: term ordering, resolution and superposition
// inference rules, contraction, derivation bookkeeping and a brute-force
// minimal proof length search.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stop_token>
#include <tuple>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tdbu/kernel.hpp"
#include "tdbu/problem_io.hpp"

namespace tdbu {

// ---------------------------------------------------------------------------
// Ordering

enum class OrderingMode : std::uint8_t { kNone, kPrecedence };

std::string_view ordering_name(OrderingMode mode);

enum class Cmp : std::uint8_t { kEqual, kGreater, kLess, kIncomparable };

// Lexicographic path order over a symbol precedence, or the empty order.
// Literals are compared through the multiset extension: s = t as {s, t},
// s != t as {s, s, t, t}, A as {A, T} and ~A as {A, A, T, T} with T a
// constant below every symbol.
class TermOrder {
 public:
  TermOrder() = default;  // the empty order
  // `precedence` lists symbols from smallest to largest; symbols missing
  // from the list are incomparable to everything else.
  explicit TermOrder(std::vector<Symbol> precedence);
  // Constants, then functions by increasing arity, then predicates; ties
  // by first occurrence.
  static TermOrder for_problem(const Problem& p);

  OrderingMode mode() const { return mode_; }
  const std::vector<Symbol>& precedence() const { return precedence_; }

  Cmp compare(const Term& s, const Term& t) const;
  Cmp compare(const Literal& a, const Literal& b) const;
  bool greater(const Term& s, const Term& t) const {
    return compare(s, t) == Cmp::kGreater;
  }
  // No other literal of `c` is greater than c[i]. Always true in mode none.
  bool maximal(const Clause& c, std::size_t i) const;
  bool maximal(std::span<const Literal> lits, std::size_t i) const;

 private:
  int rank(Symbol f) const;
  bool lpo_greater(const Term& s, const Term& t) const;

  OrderingMode mode_ = OrderingMode::kNone;
  std::vector<Symbol> precedence_;
  std::map<Symbol, int> ranks_;
};

// ---------------------------------------------------------------------------
// Inference rules

enum class Calculus : std::uint8_t { kAuto, kResolution, kSuperposition };

std::string_view calculus_name(Calculus c);

enum class InferenceRule : std::uint8_t {
  kInput,
  kResolution,
  kFactoring,
  kSuperposition,
  kEqualityResolution,
  kEqualityFactoring,
  kRewriting,
};

std::string_view inference_rule_name(InferenceRule r);
bool is_expansion(InferenceRule r);

// Conclusions carry role derived and id 0. Premises are renamed apart
// internally, so a clause may be paired with itself.
std::vector<Clause> resolve(const Clause& c, const Clause& d, const TermOrder& ord,
                            bool equality_literals = true);
std::vector<Clause> factor(const Clause& c, Calculus calculus, const TermOrder& ord);
// Superposition from a positive equation of `from` into `into`.
std::vector<Clause> superpose(const Clause& from, const Clause& into,
                              const TermOrder& ord);
std::vector<Clause> equality_resolve(const Clause& c, const TermOrder& ord);
std::vector<Clause> equality_factor(const Clause& c, const TermOrder& ord);

// ---------------------------------------------------------------------------
// Given-clause loop

struct DerivationRecord {
  InferenceRule rule = InferenceRule::kInput;
  std::vector<ClauseId> premises;
  // Expansion inferences the clause took part in.
  std::uint64_t epsilon = 0;
  // Contraction inferences (subsumption, rewriting) the clause performed.
  std::uint64_t kappa = 0;
};

class ProverState;

struct Heuristic {
  std::function<double(const Clause&)> weight;
  // Every fifo_period-th activation takes the oldest passive clause.
  std::uint32_t fifo_period = 5;
  // Consulted before the weight; may name a passive clause to activate.
  std::function<std::optional<ClauseId>(const ProverState&)> prefer;

  // symbol_count weight.
  static Heuristic standard(std::uint32_t fifo_period = 5);
  // Constant weight: first in, first out.
  static Heuristic fifo();
};

// Prefers, during the first `steps` activations, the oldest passive
// resolvent of the two most recently activated clauses.
std::function<std::optional<ClauseId>(const ProverState&)> prefer_recent_resolvents(
    std::uint32_t steps);

class ProverState {
 public:
  struct Passive {
    double weight;
    std::uint64_t seq;
  };

  const Clause& clause(ClauseId id) const { return clauses_.at(id); }
  bool known(ClauseId id) const { return clauses_.count(id) != 0; }
  const DerivationRecord& record(ClauseId id) const { return records_.at(id); }
  DerivationRecord& record(ClauseId id) { return records_.at(id); }

  const std::vector<ClauseId>& active() const { return active_; }
  bool is_active(ClauseId id) const;
  bool is_passive(ClauseId id) const { return passive_.count(id) != 0; }
  std::size_t passive_size() const { return passive_.size(); }
  // Passive ids by increasing insertion order.
  std::vector<ClauseId> passive_by_age() const;
  const std::vector<ClauseId>& activation_log() const { return log_; }
  std::uint64_t activations() const { return activations_; }
  std::uint64_t generated() const { return generated_; }
  std::optional<ClauseId> empty_clause() const { return empty_; }

  // Every positive unit in the active set.
  std::vector<ClauseId> facts() const;

 private:
  friend class Saturator;

  std::unordered_map<ClauseId, Clause> clauses_;
  std::unordered_map<ClauseId, DerivationRecord> records_;
  std::vector<ClauseId> active_;
  std::unordered_map<ClauseId, Passive> passive_;
  std::set<std::tuple<double, std::uint64_t, ClauseId>> by_weight_;
  std::map<std::uint64_t, ClauseId> by_age_;
  std::vector<ClauseId> log_;
  std::uint64_t activations_ = 0;
  std::uint64_t generated_ = 0;
  std::uint64_t seq_ = 0;
  ClauseId next_id_ = 1;
  std::optional<ClauseId> empty_;
};

struct SaturationConfig {
  Calculus calculus = Calculus::kAuto;
  TermOrder order;
  Heuristic heuristic = Heuristic::standard();
};

struct ContractResult {
  enum class Kind : std::uint8_t { kKept, kTautology, kSubsumed } kind = Kind::kKept;
  ClauseId id = 0;  // kept clause, possibly a rewritten copy
  ClauseId by = 0;  // subsumer
};

struct ActivationReport {
  std::optional<ClauseId> given;
  bool deleted = false;
  bool passive_empty = false;
  std::vector<ClauseId> generated;
  std::vector<ClauseId> back_removed;
  bool refutation = false;
};

struct SaturationLimits {
  std::uint64_t max_activations = 0;  // 0: unlimited
  std::uint64_t max_generated = 0;    // 0: unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::stop_token stop;
};

struct DerivationStep {
  ClauseId id = 0;
  InferenceRule rule = InferenceRule::kInput;
  std::vector<ClauseId> premises;
  std::string clause;
};

struct Refutation {
  // Ancestors of the empty clause in topological order, ending with it.
  std::vector<DerivationStep> derivation;
  // Non-input steps of the derivation.
  std::size_t inferences = 0;
};
struct Saturated {};
struct SaturationLimit {
  std::string reason;
};

struct SaturationResult {
  std::variant<Refutation, Saturated, SaturationLimit> outcome;
  std::uint64_t activations = 0;
  std::uint64_t generated = 0;

  bool refuted() const { return std::holds_alternative<Refutation>(outcome); }
};

class Saturator {
 public:
  // Inserts the clauses of `p` into the passive set, keeping their ids.
  Saturator(const Problem& p, SaturationConfig cfg);

  ProverState& state() { return state_; }
  const ProverState& state() const { return state_; }
  Calculus calculus() const { return calculus_; }
  const SaturationConfig& config() const { return cfg_; }

  // Forward contraction against the active set.
  ContractResult contract(const Clause& c, ClauseId id);
  // Removes or rewrites clauses made redundant by active clause `id`.
  std::vector<ClauseId> back_contract(ClauseId id);
  ActivationReport activate();
  SaturationResult run(const SaturationLimits& limits);

  // Ancestors of `id` in topological order.
  std::vector<DerivationStep> derivation(ClauseId id) const;

 private:
  ClauseId store(Clause c, InferenceRule rule, std::vector<ClauseId> premises);
  void insert_passive(ClauseId id);
  void remove_passive(ClauseId id);
  ClauseId select_given();
  std::optional<Clause> rewrite(const Clause& c, std::vector<ClauseId>& used) const;
  // Records and inserts an expansion conclusion. Returns true on the empty
  // clause.
  bool emit(Clause c, InferenceRule rule, std::vector<ClauseId> premises,
            ActivationReport& report);

  SaturationConfig cfg_;
  Calculus calculus_;
  ProverState state_;
};

// Runs the given-clause loop to a refutation, saturation or a limit.
SaturationResult saturate(const Problem& p, const SaturationConfig& cfg,
                          const SaturationLimits& limits);

struct Preprocessed {
  std::vector<ClauseId> facts;
  std::unique_ptr<Saturator> saturator;
  bool refuted = false;
};

// Exactly min(i, activations until termination) activations.
Preprocessed preprocess(const Problem& p, std::uint64_t i, const SaturationConfig& cfg,
                        const SaturationLimits& limits = {});

// ---------------------------------------------------------------------------
// Minimal proof length

struct ProofLengthResult {
  enum class Status : std::uint8_t { kFound, kNone, kBudgetExceeded } status =
      Status::kNone;
  std::uint32_t length = 0;
  std::uint64_t nodes = 0;
};

// Exact iterative deepening over inference sequences. kResolution uses
// resolution and factoring of both polarities; kSuperposition adds the
// equality rules and restricts factoring to positive literals.
ProofLengthResult min_proof_length(const std::vector<Clause>& clauses, Calculus calculus,
                                   const TermOrder& ord, std::uint32_t max_length,
                                   std::uint64_t node_budget = 2'000'000'000);

}  // namespace tdbu
