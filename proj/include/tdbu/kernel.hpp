// Logical kernel: symbols, terms, literals, clauses, substitutions and the
// syntactic operations every calculus in the library is built on.
//
// All values are immutable after construction and may be shared freely
// between threads. Symbols are interned in a process-wide table, variables
// are drawn from a monotone process-wide counter.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tdbu {

enum class SymbolKind : std::uint8_t { kFunction, kPredicate };

// Interned function or predicate symbol. Two symbols compare equal iff
// they share name, arity and kind. The ordering is by name, then arity,
// then kind, so it does not depend on interning order.
class Symbol {
 public:
  Symbol() = default;

  static Symbol intern(std::string_view name, std::uint32_t arity,
                       SymbolKind kind);
  // The distinguished binary equality predicate, printed as `=`.
  static Symbol equality();

  bool valid() const { return data_ != nullptr; }
  const std::string& name() const;
  std::uint32_t arity() const;
  SymbolKind kind() const;
  bool is_predicate() const { return kind() == SymbolKind::kPredicate; }
  bool is_equality() const;
  std::size_t hash() const;

  friend bool operator==(Symbol a, Symbol b) { return a.data_ == b.data_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b);

  struct Data;

 private:
  explicit Symbol(const Data* data) : data_(data) {}
  const Data* data_ = nullptr;
};

struct Var {
  std::uint32_t id = 0;
  friend auto operator<=>(const Var&, const Var&) = default;
};

// Returns a variable never handed out before in this process.
Var fresh_var();

// A first-order term: a variable or a symbol applied to arguments.
// Predicate atoms are represented as terms headed by a predicate symbol.
class Term {
 public:
  static Term variable(Var v);
  static Term apply(Symbol f, std::vector<Term> args);
  static Term constant(Symbol c) { return apply(c, {}); }

  bool is_var() const;
  Var var() const;
  Symbol functor() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }

  // Symbol occurrences including variables.
  std::uint32_t symbol_count() const;
  std::uint32_t var_occurrences() const;
  // Variables and constants have depth 1.
  std::uint32_t depth() const;
  bool ground() const;
  std::size_t hash() const;
  // Hash that ignores variable identities (all variables look alike).
  std::size_t shape_hash() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Total structural order: variables before applications, variables by id,
// applications by symbol then arguments left to right.
int compare(const Term& a, const Term& b);
// As compare, but all variables compare equal.
int compare_shape(const Term& a, const Term& b);

// Occurrence test for the occurs check and friends.
bool occurs(Var v, const Term& t);

class Literal {
 public:
  Literal(bool positive, Term atom);
  static Literal equation(bool positive, Term lhs, Term rhs);

  bool positive() const { return positive_; }
  bool negative() const { return !positive_; }
  const Term& atom() const { return atom_; }
  Symbol predicate() const { return atom_.functor(); }
  bool is_equality() const { return atom_.functor().is_equality(); }
  // Sides of an equality literal.
  const Term& lhs() const { return atom_.arg(0); }
  const Term& rhs() const { return atom_.arg(1); }

  Literal complement() const { return Literal(!positive_, atom_); }
  std::size_t shape_hash() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive_ == b.positive_ && a.atom_ == b.atom_;
  }

 private:
  bool positive_;
  Term atom_;
};

// Negative literals first, then predicate name, then structural term
// order. Shapes are compared before variable identities.
int compare(const Literal& a, const Literal& b);

using ClauseId = std::uint64_t;

enum class ClauseRole : std::uint8_t { kAxiom, kGoal, kDerived };

std::string_view role_name(ClauseRole role);

// A finite set of literals. The constructor sorts the literals into the
// canonical order and removes syntactic duplicates.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals,
                  ClauseRole role = ClauseRole::kAxiom, ClauseId id = 0);

  std::span<const Literal> literals() const { return literals_; }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }

  ClauseId id() const { return id_; }
  void set_id(ClauseId id) { id_ = id; }
  ClauseRole role() const { return role_; }
  void set_role(ClauseRole role) { role_ = role; }

  bool is_unit() const { return literals_.size() == 1; }
  bool is_positive_unit() const { return is_unit() && literals_[0].positive(); }
  // Nonempty and every literal negative.
  bool is_negative() const;
  // At most one positive literal.
  bool is_horn() const;
  bool is_ground() const;

  // Syntactic equality of the literal sets; ids and roles are ignored.
  friend bool operator==(const Clause& a, const Clause& b) {
    return a.literals_ == b.literals_;
  }

 private:
  std::vector<Literal> literals_;
  ClauseRole role_ = ClauseRole::kAxiom;
  ClauseId id_ = 0;
};

// Finite map from variables to terms, applied simultaneously. Substitutions
// produced by unify() are idempotent.
class Substitution {
 public:
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const Term* find(Var v) const;
  // Binding a variable to itself is a no-op.
  void bind(Var v, Term t);
  const std::map<Var, Term>& bindings() const { return map_; }

  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Clause apply(const Clause& c) const;

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.map_ == b.map_;
  }

 private:
  std::map<Var, Term> map_;
};

// Triangular binding store with an undo trail, used by unification and by
// the tableau search for cheap backtracking.
class Bindings {
 public:
  const Term* lookup(Var v) const;
  // Follows variable bindings at the top of t.
  Term deref(const Term& t) const;
  // Fully instantiates t.
  Term resolve(const Term& t) const;
  Literal resolve(const Literal& l) const;

  // Unifies under the current bindings with occurs check. On failure the
  // store is left unchanged.
  bool unify(const Term& a, const Term& b);
  // One-sided: binds only variables of `pattern`; variables of `target` are
  // treated as constants. Pattern and target must not share variables.
  // Restores on failure.
  bool match(const Term& pattern, const Term& target);

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark);

  Substitution to_substitution() const;

 private:
  bool unify_rec(const Term& a, const Term& b);
  bool occurs_deref(Var v, const Term& t) const;
  void bind(Var v, const Term& t);

  std::unordered_map<std::uint32_t, Term> map_;
  std::vector<std::uint32_t> trail_;
};

std::optional<Substitution> unify(const Term& a, const Term& b);
// Unifies the atoms; polarity is ignored.
std::optional<Substitution> unify(const Literal& a, const Literal& b);
std::optional<Substitution> match(const Term& pattern, const Term& target);
// Requires equal polarity.
std::optional<Substitution> match(const Literal& pattern,
                                  const Literal& target);

// Variables in order of first occurrence.
std::vector<Var> variables(const Term& t);
std::vector<Var> variables(const Literal& l);
std::vector<Var> variables(const Clause& c);

// Variant of `c` with fresh variables. Fresh variables come from the global
// counter, so they are disjoint from `used` and from every existing clause;
// the relative order of variable ids is preserved.
Clause rename_apart(const Clause& c, std::span<const Var> used = {});
Literal rename_apart(const Literal& l, Substitution* renaming = nullptr);

bool variant_equal(const Clause& a, const Clause& b);
bool variant_equal(const Literal& a, const Literal& b);
// Exists sigma mapping the literals of `a` injectively into `b`.
bool subsumes(const Clause& a, const Clause& b);
// Complementary pair or positive t = t.
bool is_tautology(const Clause& c);

struct Measures {
  std::uint32_t symbol_count = 0;
  std::uint32_t var_occurrences = 0;
  std::uint32_t distinct_vars = 0;
  std::uint32_t max_depth = 0;
  friend bool operator==(const Measures&, const Measures&) = default;
};

Measures measures(const Literal& l);
Measures measures(const Clause& c);

// Textual forms. Variables print as X<id> for standalone terms; clause
// printing renames variables X0, X1, ... by first occurrence so that output
// does not depend on variable ids.
std::string to_string(const Term& t);
std::string to_string(const Literal& l);
std::string to_string(const Clause& c);
std::string to_string(const Substitution& s);

// Hash consistent with variant_equal.
std::size_t variant_hash(const Clause& c);

// Associates clauses with values, keyed up to variant equality.
template <class Value>
class VariantMap {
 public:
  Value* find(const Clause& c) {
    auto [lo, hi] = map_.equal_range(variant_hash(c));
    for (auto it = lo; it != hi; ++it)
      if (variant_equal(it->second.first, c)) return &it->second.second;
    return nullptr;
  }
  const Value* find(const Clause& c) const {
    return const_cast<VariantMap*>(this)->find(c);
  }
  // Returns false (and leaves the map unchanged) if a variant is present.
  bool insert(const Clause& c, Value v) {
    if (find(c)) return false;
    map_.emplace(variant_hash(c), std::make_pair(c, std::move(v)));
    return true;
  }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_multimap<std::size_t, std::pair<Clause, Value>> map_;
};

}  // namespace tdbu
