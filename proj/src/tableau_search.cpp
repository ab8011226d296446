#include <algorithm>
#include <map>

#include "tdbu/tableau.hpp"

namespace tdbu {

namespace {

struct Candidate {
  std::size_t clause;
  std::size_t literal;
};

// Extension candidates per (predicate, polarity of the subgoal), in clause
// order and then literal order.
class ConnectionIndex {
 public:
  explicit ConnectionIndex(const std::vector<Clause>& clauses) {
    for (std::size_t i = 0; i < clauses.size(); ++i)
      for (std::size_t j = 0; j < clauses[i].size(); ++j) {
        const Literal& l = clauses[i][j];
        index_[{l.predicate(), !l.positive()}].push_back({i, j});
      }
  }

  const std::vector<Candidate>& candidates(const Literal& subgoal) const {
    auto it = index_.find({subgoal.predicate(), subgoal.positive()});
    return it == index_.end() ? empty_ : it->second;
  }

 private:
  std::map<std::pair<Symbol, bool>, std::vector<Candidate>> index_;
  std::vector<Candidate> empty_;
};

struct Abort {
  std::string reason;
};

class LimitGuard {
 public:
  explicit LimitGuard(const SearchLimits& limits) : limits_(limits) {}

  void tick() {
    ++count_;
    if (limits_.max_inferences && count_ > limits_.max_inferences)
      throw Abort{"inference limit"};
    if ((count_ & 255) == 0) poll();
  }

  void poll() const {
    if (limits_.stop.stop_requested()) throw Abort{"stopped"};
    if (limits_.deadline && std::chrono::steady_clock::now() >= *limits_.deadline)
      throw Abort{"deadline"};
  }

  std::uint64_t count() const { return count_; }

 private:
  const SearchLimits& limits_;
  std::uint64_t count_ = 0;
};

bool all_horn(const std::vector<Clause>& clauses) {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const Clause& c) { return c.is_horn(); });
}

// A new child repeating a literal on its branch violates regularity.
bool regular_after_extension(const Tableau& t, std::uint32_t subgoal) {
  std::vector<Literal> path;
  for (std::uint32_t a : t.ancestors(subgoal)) path.push_back(t.literal(a));
  path.push_back(t.literal(subgoal));
  for (std::uint32_t c : t.node(subgoal).children) {
    if (t.node(c).status != Tableau::Status::kOpen) continue;
    Literal l = t.literal(c);
    for (const Literal& p : path)
      if (p == l) return false;
  }
  return true;
}

class Prover {
 public:
  Prover(const Problem& p, const ProveOptions& opts)
      : clauses_(p.clauses),
        index_(clauses_),
        opts_(opts),
        reduction_(!all_horn(clauses_)),
        guard_(opts.limits) {}

  ProveResult run(const std::vector<Clause>& starts) {
    ProveResult result;
    std::uint32_t last_complete = 0;
    bool any_complete = false;
    try {
      for (std::uint32_t n = opts_.initial_resource; n <= opts_.limits.max_resource;
           n += std::max<std::uint32_t>(opts_.step, 1)) {
        n_ = n;
        bound_hit_ = false;
        for (const Clause& s : starts) {
          guard_.poll();
          Tableau t;
          t.start(s);
          guard_.tick();
          steps_.assign(1, ProofStep{Rule::kStart, 0, s.id(), 0, 0});
          if (!fits(t, 0)) {
            bound_hit_ = true;
            continue;
          }
          if (solve(t)) {
            TableauProof proof;
            proof.steps = steps_;
            proof.resource = n;
            proof.unifier = unifier_text(t);
            result.outcome = Closed{std::move(proof)};
            result.inferences = guard_.count();
            return result;
          }
        }
        if (!bound_hit_) {
          result.outcome = Exhausted{"search space exhausted at resource " +
                                     std::to_string(n)};
          result.inferences = guard_.count();
          return result;
        }
        last_complete = n;
        any_complete = true;
      }
      result.outcome = LimitReached{last_complete, "resource limit"};
    } catch (const Abort& a) {
      result.outcome = LimitReached{any_complete ? last_complete : 0, a.reason};
    }
    result.inferences = guard_.count();
    return result;
  }

 private:
  static std::string unifier_text(const Tableau& t) {
    std::vector<Var> vars;
    for (const auto& n : t.nodes())
      if (n.literal)
        for (Var v : variables(*n.literal))
          if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    Substitution s;
    for (Var v : vars) s.bind(v, t.bindings().resolve(Term::variable(v)));
    return to_string(s);
  }

  // Each open leaf needs at least one more inference.
  bool fits(const Tableau& t, std::size_t extra_open) const {
    std::size_t open = t.open_leaves().size() + extra_open;
    return t.inferences() + open <= opts_.bound.inference_cap(n_) &&
           t.max_inner_depth() <= opts_.bound.depth_cap(n_);
  }

  // Closing `g` without binding a variable leaves the other subgoals as
  // general as possible, so the alternatives for `g` need not be tried.
  static bool closed_without_bindings(const Tableau& t, const Tableau::Mark& m,
                                      std::uint32_t g) {
    if (t.mark().bindings != m.bindings) return false;
    for (std::uint32_t c : t.node(g).children)
      if (t.node(c).status == Tableau::Status::kOpen) return false;
    return true;
  }

  bool solve(Tableau& t) {
    std::vector<std::uint32_t> open = t.open_leaves();
    if (open.empty()) return true;
    std::uint32_t g = open.front();
    Literal gl = t.literal(g);
    std::uint32_t icap = opts_.bound.inference_cap(n_);
    std::uint32_t dcap = opts_.bound.depth_cap(n_);
    std::size_t others = open.size() - 1;

    if (reduction_) {
      if (t.inferences() + 1 + others > icap) {
        bound_hit_ = true;
      } else {
        for (std::uint32_t a : t.ancestors(g)) {
          Tableau::Mark m = t.mark();
          if (!t.reduce(g, a)) continue;
          guard_.tick();
          steps_.push_back({Rule::kReduction, g, 0, 0, a});
          if (solve(t)) return true;
          steps_.pop_back();
          bool cut = closed_without_bindings(t, m, g);
          t.undo(m);
          if (cut) return false;
        }
      }
    }

    if (t.node(g).depth > dcap) {
      bound_hit_ = true;
      return false;
    }
    for (const Candidate& cand : index_.candidates(gl)) {
      const Clause& c = clauses_[cand.clause];
      if (t.inferences() + 1 + others + (c.size() - 1) > icap) {
        bound_hit_ = true;
        continue;
      }
      Tableau::Mark m = t.mark();
      if (!t.extend(g, c, cand.literal)) continue;
      guard_.tick();
      if (opts_.regularity && !regular_after_extension(t, g)) {
        t.undo(m);
        continue;
      }
      steps_.push_back({Rule::kExtension, g, c.id(),
                        static_cast<std::uint32_t>(cand.literal), 0});
      if (solve(t)) return true;
      steps_.pop_back();
      bool cut = closed_without_bindings(t, m, g);
      t.undo(m);
      if (cut) return false;
    }
    return false;
  }

  const std::vector<Clause>& clauses_;
  ConnectionIndex index_;
  const ProveOptions& opts_;
  bool reduction_;
  LimitGuard guard_;
  std::uint32_t n_ = 0;
  bool bound_hit_ = false;
  std::vector<ProofStep> steps_;
};

class Enumerator {
 public:
  Enumerator(const Problem& p, const EnumerateOptions& opts)
      : problem_(p),
        index_(p.clauses),
        opts_(opts),
        reduction_(!all_horn(p.clauses)),
        guard_(opts.limits) {
    for (const Clause& c : p.clauses) inputs_.insert(c, 0);
  }

  EnumerateResult run(const std::vector<Clause>& starts,
                      const std::vector<std::uint32_t>& offsets) {
    try {
      for (std::size_t i = 0; i < starts.size(); ++i) {
        offset_ = i < offsets.size() ? offsets[i] : 0;
        Tableau t;
        t.start(starts[i]);
        guard_.tick();
        if (t.inferences() > opts_.k) continue;
        record(t);
        expand(t, 0);
      }
    } catch (const Abort&) {
      result_.truncated = true;
    }
    result_.tableaux = guard_.count();
    return std::move(result_);
  }

 private:
  void record(const Tableau& t) {
    if (t.closed()) {
      result_.proof_found = true;
      return;
    }
    Clause s = t.subgoal_clause();
    if (inputs_.find(s)) return;
    std::uint32_t inf = t.inferences() + offset_;
    if (std::size_t* at = seen_.find(s)) {
      SubgoalClauseRecord& r = result_.records[*at];
      if (inf < r.inferences) {
        r.inferences = inf;
        r.tableau_clauses = t.tableau_clauses();
        r.tableau_clause_sources = t.tableau_clause_sources();
        r.start_clause = t.start_clause();
      }
      return;
    }
    s = rename_apart(s);
    seen_.insert(s, result_.records.size());
    SubgoalClauseRecord r;
    r.clause = s;
    r.inferences = inf;
    r.tableau_clauses = t.tableau_clauses();
    r.tableau_clause_sources = t.tableau_clause_sources();
    r.start_clause = t.start_clause();
    result_.records.push_back(std::move(r));
    if (opts_.cap && result_.records.size() >= *opts_.cap) throw Abort{"cap"};
  }

  // Expands leaves in increasing node order so that each tableau of the
  // segment is produced exactly once.
  void expand(Tableau& t, std::uint32_t last) {
    if (t.inferences() >= opts_.k) return;
    std::vector<std::uint32_t> open = t.open_leaves();
    std::sort(open.begin(), open.end());
    for (std::uint32_t g : open) {
      if (g <= last) continue;
      Literal gl = t.literal(g);
      for (const Candidate& cand : index_.candidates(gl)) {
        const Clause& c = problem_.clauses[cand.clause];
        Tableau::Mark m = t.mark();
        if (!t.extend(g, c, cand.literal)) continue;
        guard_.tick();
        if (!opts_.regularity || regular_after_extension(t, g)) {
          record(t);
          expand(t, g);
        }
        t.undo(m);
      }
      if (!reduction_) continue;
      for (std::uint32_t a : t.ancestors(g)) {
        Tableau::Mark m = t.mark();
        if (!t.reduce(g, a)) continue;
        guard_.tick();
        record(t);
        expand(t, g);
        t.undo(m);
      }
    }
  }

  const Problem& problem_;
  ConnectionIndex index_;
  const EnumerateOptions& opts_;
  bool reduction_;
  LimitGuard guard_;
  VariantMap<int> inputs_;
  VariantMap<std::size_t> seen_;
  std::uint32_t offset_ = 0;
  EnumerateResult result_;
};

}  // namespace

ProveResult prove(const Problem& p, const ProveOptions& opts) {
  std::vector<Clause> starts = goal_clauses(p, opts.mode);
  if (starts.empty()) {
    ProveResult r;
    r.outcome = Exhausted{"no start clause: the problem has no negative clause"};
    return r;
  }
  return Prover(p, opts).run(starts);
}

EnumerateResult enumerate_subgoal_clauses(const Problem& p,
                                          const EnumerateOptions& opts) {
  std::vector<Clause> starts =
      opts.start_set ? *opts.start_set : goal_clauses(p, opts.mode);
  return Enumerator(p, opts).run(starts, opts.start_offsets);
}

}  // namespace tdbu
