// CNF problem files: parsing, serialization, equality axioms and start
// clause classification.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tdbu/kernel.hpp"

namespace tdbu {

struct Problem {
  std::string name;
  std::vector<Clause> clauses;
  // Statement names, parallel to `clauses`.
  std::vector<std::string> names;
  // Function and predicate symbols in order of first occurrence. The
  // equality predicate is included when used.
  std::vector<Symbol> signature;
  bool has_equality = false;

  std::size_t size() const { return clauses.size(); }
  // Appends a clause, assigns the next free id and extends the signature.
  void add(Clause c, std::string clause_name = {});
  const Clause* find(ClauseId id) const;
  ClauseId next_id() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// Grammar:
//   cnf(<name>, <role>, ( <lit> | ... )).
// role in {axiom, hypothesis, negated_conjecture}; literals are `[~]atom`,
// `s = t` or `s != t`. `%` starts a line comment.
Problem parse_problem(std::string_view text, std::string name = {});
Problem load_problem(const std::string& path);

std::string serialize(const Problem& p);

// Reflexivity, symmetry, transitivity and one substitution axiom per
// argument position of every function and non-equality predicate.
Problem add_equality_axioms(const Problem& p);

enum class StartMode { kAll, kNegative };

std::string_view mode_name(StartMode mode);

// kAll: every clause. kNegative: all-negative clauses and goal clauses. An
// empty result in kNegative mode means the problem has no negative clause.
std::vector<Clause> goal_clauses(const Problem& p, StartMode mode);

}  // namespace tdbu
