// Connection tableau (model elimination) calculus: the tableau data
// structure, completeness bounds, iterative-deepening proof search and
// subgoal clause enumeration.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <variant>
#include <vector>

#include "tdbu/kernel.hpp"
#include "tdbu/problem_io.hpp"

namespace tdbu {

enum class Rule : std::uint8_t { kStart, kExtension, kReduction };

std::string_view rule_name(Rule r);

enum class BoundKind : std::uint8_t { kDepth, kInference, kWeightedDepth };

struct Bound {
  BoundKind kind = BoundKind::kDepth;
  double depth_factor = 0.5;
  double inference_factor = 1.0;

  std::uint32_t depth_cap(std::uint32_t n) const;
  std::uint32_t inference_cap(std::uint32_t n) const;
};

std::string_view bound_name(BoundKind kind);

// A literal-labelled tree with a shared binding store. Expansion steps are
// undone by `undo(mark())`. Node 0 is the root and carries no literal.
class Tableau {
 public:
  enum class Status : std::uint8_t { kOpen, kClosed, kInner };

  struct Node {
    std::optional<Literal> literal;
    std::uint32_t parent = 0;
    std::uint32_t depth = 0;
    Status status = Status::kInner;
    std::vector<std::uint32_t> children;
  };

  struct TableauClause {
    ClauseId source = 0;
    Clause instance;  // renamed copy; apply bindings() to instantiate
  };

  struct Mark {
    std::size_t nodes, bindings, statuses, clauses;
    std::uint32_t inferences, max_inner_depth;
  };

  Tableau();

  // Only on the trivial tableau.
  bool start(const Clause& c);
  // Extends open leaf `subgoal` with a variant of `c`, closing the new child
  // made from literal `lit` through unification.
  bool extend(std::uint32_t subgoal, const Clause& c, std::size_t lit);
  // Closes open leaf `subgoal` against a complementary ancestor.
  bool reduce(std::uint32_t subgoal, std::uint32_t ancestor);

  Mark mark() const;
  void undo(const Mark& m);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::uint32_t i) const { return nodes_[i]; }
  bool trivial() const { return nodes_.size() == 1; }
  bool closed() const;
  std::uint32_t inferences() const { return inferences_; }
  // Largest depth of an inner node; the root has depth 0.
  std::uint32_t max_inner_depth() const { return max_inner_depth_; }
  ClauseId start_clause() const {
    return clauses_.empty() ? 0 : clauses_.front().source;
  }
  const Bindings& bindings() const { return bindings_; }

  // Open leaves in tree order (leftmost first).
  std::vector<std::uint32_t> open_leaves() const;
  // Instantiated literal of a node.
  Literal literal(std::uint32_t i) const;
  // Clause of instantiated open subgoals.
  Clause subgoal_clause() const;
  std::vector<Clause> tableau_clauses() const;
  std::vector<ClauseId> tableau_clause_sources() const;
  // Ancestors of `i` from the root downwards, excluding the root and `i`.
  std::vector<std::uint32_t> ancestors(std::uint32_t i) const;

  // Checks the connectedness condition and that every tableau clause is an
  // instance of its source. Returns an empty string when the checks pass.
  std::string check_invariants(const std::vector<Clause>& sources) const;

 private:
  void set_status(std::uint32_t i, Status s);
  std::uint32_t attach(std::uint32_t parent, const Clause& instance);

  std::vector<Node> nodes_;
  std::vector<std::pair<std::uint32_t, Status>> status_trail_;
  std::vector<TableauClause> clauses_;
  Bindings bindings_;
  std::uint32_t inferences_ = 0;
  std::uint32_t max_inner_depth_ = 0;
};

bool within_bound(const Tableau& t, const Bound& b, std::uint32_t n);

// Copying single-step expansion. `arg` is the clause for start and
// extension (with `lit` the connected literal) and ignored for reduction,
// which uses `ancestor`.
std::optional<Tableau> expand_tableau(const Tableau& t, Rule rule,
                                      std::uint32_t subgoal, const Clause* arg,
                                      std::size_t lit = 0,
                                      std::uint32_t ancestor = 0);

struct ProofStep {
  Rule rule = Rule::kStart;
  std::uint32_t subgoal = 0;
  ClauseId clause = 0;
  std::uint32_t literal = 0;
  std::uint32_t ancestor = 0;
};

struct TableauProof {
  std::vector<ProofStep> steps;
  std::uint32_t resource = 0;
  // Substitution of the closed tableau restricted to its variables.
  std::string unifier;
};

// Replays `proof` over `clauses`. Returns the closed tableau, or nothing if
// some step fails or the result is not closed.
std::optional<Tableau> replay(const TableauProof& proof,
                              const std::vector<Clause>& clauses);

struct SearchLimits {
  std::uint32_t max_resource = 64;
  // Total successful expansion steps over all rounds; 0 means unlimited.
  std::uint64_t max_inferences = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::stop_token stop;
};

struct ProveOptions {
  StartMode mode = StartMode::kNegative;
  Bound bound;
  std::uint32_t initial_resource = 1;
  std::uint32_t step = 1;
  bool regularity = true;
  SearchLimits limits;
};

struct Closed {
  TableauProof proof;
};
struct Exhausted {
  std::string reason;
};
struct LimitReached {
  // Last resource whose segment was searched completely.
  std::uint32_t last_complete = 0;
  std::string reason;
};

struct ProveResult {
  std::variant<Closed, Exhausted, LimitReached> outcome;
  std::uint64_t inferences = 0;

  bool closed() const { return std::holds_alternative<Closed>(outcome); }
};

// Clauses of `p` are the extension candidates and, filtered by
// goal_clauses(), the start candidates.
ProveResult prove(const Problem& p, const ProveOptions& opts);

struct SubgoalClauseRecord {
  Clause clause;
  std::uint32_t inferences = 0;
  std::vector<Clause> tableau_clauses;
  std::vector<ClauseId> tableau_clause_sources;
  ClauseId start_clause = 0;
};

struct EnumerateOptions {
  std::uint32_t k = 2;
  StartMode mode = StartMode::kNegative;
  // Replaces goal_clauses() as start candidates when set.
  std::optional<std::vector<Clause>> start_set;
  // Added to the inference count of records grown from the matching start
  // clause.
  std::vector<std::uint32_t> start_offsets;
  std::optional<std::size_t> cap;
  bool regularity = false;
  SearchLimits limits;
};

struct EnumerateResult {
  std::vector<SubgoalClauseRecord> records;
  // Some tableau in the segment was closed.
  bool proof_found = false;
  // The segment was not searched completely (limits or cap).
  bool truncated = false;
  std::uint64_t tableaux = 0;
};

// Every tableau of the inference-bounded segment with resource k yields its
// subgoal clause. Variants of input clauses are dropped and variants are
// merged keeping the smallest inference count.
EnumerateResult enumerate_subgoal_clauses(const Problem& p,
                                          const EnumerateOptions& opts);

}  // namespace tdbu
