#include <algorithm>
#include <cmath>

#include "tdbu/tableau.hpp"

namespace tdbu {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::kStart: return "start";
    case Rule::kExtension: return "extension";
    case Rule::kReduction: return "reduction";
  }
  return "start";
}

std::string_view bound_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::kDepth: return "depth";
    case BoundKind::kInference: return "inference";
    case BoundKind::kWeightedDepth: return "weighted";
  }
  return "inference";
}

std::uint32_t Bound::depth_cap(std::uint32_t n) const {
  switch (kind) {
    case BoundKind::kDepth: return n;
    case BoundKind::kInference: return UINT32_MAX;
    case BoundKind::kWeightedDepth:
      return static_cast<std::uint32_t>(std::ceil(depth_factor * n));
  }
  return n;
}

std::uint32_t Bound::inference_cap(std::uint32_t n) const {
  switch (kind) {
    case BoundKind::kDepth: return UINT32_MAX;
    case BoundKind::kInference: return n;
    case BoundKind::kWeightedDepth:
      return static_cast<std::uint32_t>(std::ceil(inference_factor * n));
  }
  return n;
}

namespace {

// Renames c apart while keeping the literal order of c.
std::vector<Literal> renamed_literals(const Clause& c) {
  std::vector<Var> vars = variables(c);
  std::sort(vars.begin(), vars.end());
  Substitution s;
  for (Var v : vars) s.bind(v, Term::variable(fresh_var()));
  std::vector<Literal> out;
  out.reserve(c.size());
  for (const Literal& l : c.literals()) out.push_back(s.apply(l));
  return out;
}

}  // namespace

Tableau::Tableau() { nodes_.push_back(Node{}); }

void Tableau::set_status(std::uint32_t i, Status s) {
  status_trail_.emplace_back(i, nodes_[i].status);
  nodes_[i].status = s;
}

bool Tableau::start(const Clause& c) {
  if (!trivial()) return false;
  std::vector<Literal> lits = renamed_literals(c);
  for (const Literal& l : lits) {
    Node n;
    n.literal = l;
    n.parent = 0;
    n.depth = 1;
    n.status = Status::kOpen;
    nodes_[0].children.push_back(static_cast<std::uint32_t>(nodes_.size()));
    nodes_.push_back(std::move(n));
  }
  clauses_.push_back({c.id(), Clause(std::move(lits), c.role(), c.id())});
  ++inferences_;
  return true;
}

bool Tableau::extend(std::uint32_t subgoal, const Clause& c, std::size_t lit) {
  if (subgoal >= nodes_.size() || nodes_[subgoal].status != Status::kOpen)
    return false;
  if (lit >= c.size()) return false;
  const Literal& g = *nodes_[subgoal].literal;
  const Literal& connect = c[lit];
  if (g.positive() == connect.positive() || g.predicate() != connect.predicate())
    return false;
  {
    // Input variables never occur in the tableau, so a trial unification
    // against the unrenamed literal filters failures before copying.
    std::size_t m = bindings_.mark();
    bool ok = bindings_.unify(g.atom(), connect.atom());
    bindings_.undo(m);
    if (!ok) return false;
  }
  std::vector<Literal> lits = renamed_literals(c);
  if (!bindings_.unify(g.atom(), lits[lit].atom())) return false;
  std::uint32_t depth = nodes_[subgoal].depth;
  for (std::size_t j = 0; j < lits.size(); ++j) {
    Node n;
    n.literal = lits[j];
    n.parent = subgoal;
    n.depth = depth + 1;
    n.status = j == lit ? Status::kClosed : Status::kOpen;
    nodes_[subgoal].children.push_back(static_cast<std::uint32_t>(nodes_.size()));
    nodes_.push_back(std::move(n));
  }
  set_status(subgoal, Status::kInner);
  max_inner_depth_ = std::max(max_inner_depth_, depth);
  clauses_.push_back({c.id(), Clause(std::move(lits), c.role(), c.id())});
  ++inferences_;
  return true;
}

bool Tableau::reduce(std::uint32_t subgoal, std::uint32_t ancestor) {
  if (subgoal >= nodes_.size() || nodes_[subgoal].status != Status::kOpen)
    return false;
  if (ancestor == 0 || ancestor >= nodes_.size()) return false;
  std::uint32_t cur = nodes_[subgoal].parent;
  while (cur != 0 && cur != ancestor) cur = nodes_[cur].parent;
  if (cur != ancestor) return false;
  const Literal& g = *nodes_[subgoal].literal;
  const Literal& a = *nodes_[ancestor].literal;
  if (g.positive() == a.positive() || g.predicate() != a.predicate()) return false;
  if (!bindings_.unify(g.atom(), a.atom())) return false;
  set_status(subgoal, Status::kClosed);
  ++inferences_;
  return true;
}

Tableau::Mark Tableau::mark() const {
  return Mark{nodes_.size(), bindings_.mark(), status_trail_.size(),
              clauses_.size(), inferences_, max_inner_depth_};
}

void Tableau::undo(const Mark& m) {
  while (nodes_.size() > m.nodes) {
    std::uint32_t parent = nodes_.back().parent;
    nodes_[parent].children.pop_back();
    nodes_.pop_back();
  }
  while (status_trail_.size() > m.statuses) {
    auto [i, s] = status_trail_.back();
    nodes_[i].status = s;
    status_trail_.pop_back();
  }
  bindings_.undo(m.bindings);
  clauses_.resize(m.clauses);
  inferences_ = m.inferences;
  max_inner_depth_ = m.max_inner_depth;
}

bool Tableau::closed() const {
  if (trivial()) return false;
  return std::none_of(nodes_.begin(), nodes_.end(),
                      [](const Node& n) { return n.status == Status::kOpen; });
}

std::vector<std::uint32_t> Tableau::open_leaves() const {
  std::vector<std::uint32_t> out;
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    std::uint32_t i = stack.back();
    stack.pop_back();
    const Node& n = nodes_[i];
    if (n.status == Status::kOpen) out.push_back(i);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

Literal Tableau::literal(std::uint32_t i) const {
  return bindings_.resolve(*nodes_[i].literal);
}

Clause Tableau::subgoal_clause() const {
  std::vector<Literal> lits;
  for (std::uint32_t i : open_leaves()) lits.push_back(literal(i));
  return Clause(std::move(lits), ClauseRole::kDerived);
}

std::vector<Clause> Tableau::tableau_clauses() const {
  std::vector<Clause> out;
  out.reserve(clauses_.size());
  for (const TableauClause& tc : clauses_) {
    std::vector<Literal> lits;
    for (const Literal& l : tc.instance.literals()) lits.push_back(bindings_.resolve(l));
    out.emplace_back(std::move(lits), tc.instance.role(), tc.source);
  }
  return out;
}

std::vector<ClauseId> Tableau::tableau_clause_sources() const {
  std::vector<ClauseId> out;
  for (const TableauClause& tc : clauses_) out.push_back(tc.source);
  return out;
}

std::vector<std::uint32_t> Tableau::ancestors(std::uint32_t i) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t cur = nodes_[i].parent; cur != 0; cur = nodes_[cur].parent)
    out.push_back(cur);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Tableau::check_invariants(const std::vector<Clause>& sources) const {
  for (std::uint32_t i = 1; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.status != Status::kInner) continue;
    Literal l = literal(i);
    bool connected = false;
    for (std::uint32_t c : n.children) {
      if (!nodes_[c].children.empty()) continue;
      if (literal(c) == l.complement()) connected = true;
    }
    if (!connected) return "node " + std::to_string(i) + " is not connected";
  }
  for (const TableauClause& tc : clauses_) {
    const Clause* src = nullptr;
    for (const Clause& c : sources)
      if (c.id() == tc.source) src = &c;
    if (!src) return "unknown tableau clause source " + std::to_string(tc.source);
    Clause inst = tableau_clauses()[&tc - clauses_.data()];
    std::vector<Literal> renamed = renamed_literals(*src);
    std::vector<Literal> resolved;
    for (const Literal& l : tc.instance.literals()) resolved.push_back(bindings_.resolve(l));
    if (renamed.size() != resolved.size())
      return "tableau clause size differs from its source";
    Bindings b;
    for (std::size_t j = 0; j < renamed.size(); ++j) {
      if (renamed[j].positive() != resolved[j].positive() ||
          !b.match(renamed[j].atom(), resolved[j].atom()))
        return "tableau clause " + to_string(inst) + " is not an instance of " +
               to_string(*src);
    }
  }
  return {};
}

bool within_bound(const Tableau& t, const Bound& b, std::uint32_t n) {
  return t.inferences() <= b.inference_cap(n) &&
         t.max_inner_depth() <= b.depth_cap(n);
}

std::optional<Tableau> expand_tableau(const Tableau& t, Rule rule,
                                      std::uint32_t subgoal, const Clause* arg,
                                      std::size_t lit, std::uint32_t ancestor) {
  Tableau out = t;
  bool ok = false;
  switch (rule) {
    case Rule::kStart: ok = arg && out.start(*arg); break;
    case Rule::kExtension: ok = arg && out.extend(subgoal, *arg, lit); break;
    case Rule::kReduction: ok = out.reduce(subgoal, ancestor); break;
  }
  if (!ok) return std::nullopt;
  return out;
}

std::optional<Tableau> replay(const TableauProof& proof,
                              const std::vector<Clause>& clauses) {
  auto find = [&](ClauseId id) -> const Clause* {
    for (const Clause& c : clauses)
      if (c.id() == id) return &c;
    return nullptr;
  };
  Tableau t;
  for (const ProofStep& s : proof.steps) {
    const Clause* c = find(s.clause);
    bool ok = false;
    switch (s.rule) {
      case Rule::kStart: ok = c && t.start(*c); break;
      case Rule::kExtension: ok = c && t.extend(s.subgoal, *c, s.literal); break;
      case Rule::kReduction: ok = t.reduce(s.subgoal, s.ancestor); break;
    }
    if (!ok) return std::nullopt;
  }
  if (!t.closed()) return std::nullopt;
  return t;
}

}  // namespace tdbu
