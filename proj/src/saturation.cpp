#include <algorithm>

#include "tdbu/saturation.hpp"

namespace tdbu {

Heuristic Heuristic::standard(std::uint32_t fifo_period) {
  Heuristic h;
  h.weight = [](const Clause& c) { return static_cast<double>(measures(c).symbol_count); };
  h.fifo_period = fifo_period;
  return h;
}

Heuristic Heuristic::fifo() {
  Heuristic h;
  h.weight = [](const Clause&) { return 0.0; };
  h.fifo_period = 1;
  return h;
}

std::function<std::optional<ClauseId>(const ProverState&)> prefer_recent_resolvents(
    std::uint32_t steps) {
  return [steps](const ProverState& s) -> std::optional<ClauseId> {
    if (s.activations() >= steps) return std::nullopt;
    const auto& log = s.activation_log();
    if (log.size() < 2) return std::nullopt;
    std::vector<ClauseId> recent{log[log.size() - 2], log.back()};
    std::sort(recent.begin(), recent.end());
    for (ClauseId id : s.passive_by_age()) {
      const DerivationRecord& r = s.record(id);
      if (r.rule != InferenceRule::kResolution) continue;
      std::vector<ClauseId> prem = r.premises;
      std::sort(prem.begin(), prem.end());
      if (prem == recent) return id;
    }
    return std::nullopt;
  };
}

bool ProverState::is_active(ClauseId id) const {
  return std::find(active_.begin(), active_.end(), id) != active_.end();
}

std::vector<ClauseId> ProverState::passive_by_age() const {
  std::vector<ClauseId> out;
  out.reserve(by_age_.size());
  for (const auto& [seq, id] : by_age_) out.push_back(id);
  return out;
}

std::vector<ClauseId> ProverState::facts() const {
  std::vector<ClauseId> out;
  for (ClauseId id : active_)
    if (clauses_.at(id).is_positive_unit()) out.push_back(id);
  return out;
}

// ---------------------------------------------------------------------------

Saturator::Saturator(const Problem& p, SaturationConfig cfg) : cfg_(std::move(cfg)) {
  calculus_ = cfg_.calculus;
  if (calculus_ == Calculus::kAuto)
    calculus_ = p.has_equality ? Calculus::kSuperposition : Calculus::kResolution;
  if (!cfg_.heuristic.weight) cfg_.heuristic.weight = Heuristic::standard().weight;
  for (const Clause& c : p.clauses) state_.next_id_ = std::max(state_.next_id_, c.id() + 1);
  for (const Clause& c : p.clauses) {
    ClauseId id = c.id() ? c.id() : state_.next_id_++;
    Clause copy = c;
    copy.set_id(id);
    state_.clauses_.emplace(id, copy);
    state_.records_.emplace(id, DerivationRecord{});
    if (c.empty() && !state_.empty_) state_.empty_ = id;
    if (!is_tautology(c)) insert_passive(id);
  }
}

ClauseId Saturator::store(Clause c, InferenceRule rule, std::vector<ClauseId> premises) {
  ClauseId id = state_.next_id_++;
  c.set_id(id);
  c.set_role(ClauseRole::kDerived);
  state_.clauses_.emplace(id, std::move(c));
  DerivationRecord r;
  r.rule = rule;
  r.premises = std::move(premises);
  state_.records_.emplace(id, std::move(r));
  return id;
}

void Saturator::insert_passive(ClauseId id) {
  double w = cfg_.heuristic.weight(state_.clauses_.at(id));
  std::uint64_t seq = state_.seq_++;
  state_.passive_.emplace(id, ProverState::Passive{w, seq});
  state_.by_weight_.emplace(w, seq, id);
  state_.by_age_.emplace(seq, id);
}

void Saturator::remove_passive(ClauseId id) {
  auto it = state_.passive_.find(id);
  if (it == state_.passive_.end()) return;
  state_.by_weight_.erase({it->second.weight, it->second.seq, id});
  state_.by_age_.erase(it->second.seq);
  state_.passive_.erase(it);
}

ClauseId Saturator::select_given() {
  if (cfg_.heuristic.prefer)
    if (auto id = cfg_.heuristic.prefer(state_); id && state_.is_passive(*id)) return *id;
  std::uint32_t f = cfg_.heuristic.fifo_period;
  if (f >= 1 && (state_.activations_ + 1) % f == 0) return state_.by_age_.begin()->second;
  return std::get<2>(*state_.by_weight_.begin());
}

namespace {

struct RewriteRule {
  ClauseId id;
  Term lhs, rhs;
};

std::optional<RewriteRule> orient(const Clause& c, ClauseId id, const TermOrder& ord) {
  if (ord.mode() == OrderingMode::kNone) return std::nullopt;
  if (!c.is_positive_unit() || !c[0].is_equality()) return std::nullopt;
  Cmp cmp = ord.compare(c[0].lhs(), c[0].rhs());
  if (cmp == Cmp::kGreater) return RewriteRule{id, c[0].lhs(), c[0].rhs()};
  if (cmp == Cmp::kLess) return RewriteRule{id, c[0].rhs(), c[0].lhs()};
  return std::nullopt;
}

// One rewrite step at the first matching position in pre-order.
std::optional<Term> rewrite_once(const Term& t, const RewriteRule& r) {
  if (t.is_var()) return std::nullopt;
  if (auto s = match(r.lhs, t)) return s->apply(r.rhs);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (auto sub = rewrite_once(t.arg(i), r)) {
      std::vector<Term> args(t.args().begin(), t.args().end());
      args[i] = *sub;
      return Term::apply(t.functor(), std::move(args));
    }
  }
  return std::nullopt;
}

std::optional<Literal> rewrite_literal(const Literal& l, const RewriteRule& r) {
  const Term& atom = l.atom();
  for (std::size_t i = 0; i < atom.args().size(); ++i) {
    if (auto sub = rewrite_once(atom.arg(i), r)) {
      std::vector<Term> args(atom.args().begin(), atom.args().end());
      args[i] = *sub;
      return Literal(l.positive(), Term::apply(atom.functor(), std::move(args)));
    }
  }
  return std::nullopt;
}

std::optional<Clause> rewrite_with(const Clause& c, const RewriteRule& r) {
  std::vector<Literal> lits(c.literals().begin(), c.literals().end());
  bool changed = false;
  for (int guard = 0; guard < 1000; ++guard) {
    bool step = false;
    for (Literal& l : lits)
      if (auto nl = rewrite_literal(l, r)) {
        l = *nl;
        step = changed = true;
        break;
      }
    if (!step) break;
  }
  if (!changed) return std::nullopt;
  return Clause(std::move(lits), ClauseRole::kDerived);
}

}  // namespace

std::optional<Clause> Saturator::rewrite(const Clause& c, std::vector<ClauseId>& used) const {
  if (cfg_.order.mode() == OrderingMode::kNone) return std::nullopt;
  std::vector<RewriteRule> rules;
  for (ClauseId a : state_.active_)
    if (auto r = orient(state_.clauses_.at(a), a, cfg_.order)) rules.push_back(*r);
  if (rules.empty()) return std::nullopt;
  Clause cur = c;
  bool changed = false;
  for (int guard = 0; guard < 1000; ++guard) {
    bool step = false;
    for (const RewriteRule& r : rules) {
      if (auto next = rewrite_with(cur, r)) {
        cur = *next;
        if (std::find(used.begin(), used.end(), r.id) == used.end()) used.push_back(r.id);
        step = changed = true;
      }
    }
    if (!step) break;
  }
  if (!changed) return std::nullopt;
  return cur;
}

ContractResult Saturator::contract(const Clause& c, ClauseId id) {
  ContractResult res;
  Clause cur = c;
  ClauseId cur_id = id;
  for (int round = 0; round < 2; ++round) {
    if (is_tautology(cur)) {
      res.kind = ContractResult::Kind::kTautology;
      res.id = cur_id;
      return res;
    }
    for (ClauseId a : state_.active_) {
      const Clause& ac = state_.clauses_.at(a);
      if (ac.size() <= cur.size() && subsumes(ac, cur)) {
        ++state_.records_.at(a).kappa;
        res.kind = ContractResult::Kind::kSubsumed;
        res.id = cur_id;
        res.by = a;
        return res;
      }
    }
    if (round == 1) break;
    std::vector<ClauseId> used;
    auto rw = rewrite(cur, used);
    if (!rw) break;
    std::vector<ClauseId> premises{cur_id};
    premises.insert(premises.end(), used.begin(), used.end());
    for (ClauseId u : used) ++state_.records_.at(u).kappa;
    cur_id = store(*rw, InferenceRule::kRewriting, std::move(premises));
    cur = state_.clauses_.at(cur_id);
  }
  res.kind = ContractResult::Kind::kKept;
  res.id = cur_id;
  return res;
}

std::vector<ClauseId> Saturator::back_contract(ClauseId id) {
  std::vector<ClauseId> removed;
  const Clause c = state_.clauses_.at(id);
  DerivationRecord& rec = state_.records_.at(id);
  for (auto it = state_.active_.begin(); it != state_.active_.end();) {
    const Clause& d = state_.clauses_.at(*it);
    if (*it != id && c.size() <= d.size() && subsumes(c, d)) {
      ++rec.kappa;
      removed.push_back(*it);
      it = state_.active_.erase(it);
    } else {
      ++it;
    }
  }
  for (ClauseId p : state_.passive_by_age()) {
    const Clause& d = state_.clauses_.at(p);
    if (c.size() <= d.size() && subsumes(c, d)) {
      ++rec.kappa;
      removed.push_back(p);
      remove_passive(p);
    }
  }
  auto rule = orient(c, id, cfg_.order);
  if (!rule) return removed;
  std::vector<ClauseId> targets;
  for (ClauseId a : state_.active_)
    if (a != id) targets.push_back(a);
  for (ClauseId p : state_.passive_by_age()) targets.push_back(p);
  for (ClauseId t : targets) {
    auto rw = rewrite_with(state_.clauses_.at(t), *rule);
    if (!rw) continue;
    ++state_.records_.at(id).kappa;
    removed.push_back(t);
    if (state_.is_passive(t)) {
      remove_passive(t);
    } else {
      state_.active_.erase(std::find(state_.active_.begin(), state_.active_.end(), t));
    }
    ClauseId nid = store(*rw, InferenceRule::kRewriting, {t, id});
    if (state_.clauses_.at(nid).empty()) {
      if (!state_.empty_) state_.empty_ = nid;
      continue;
    }
    if (!is_tautology(state_.clauses_.at(nid))) insert_passive(nid);
  }
  return removed;
}

bool Saturator::emit(Clause c, InferenceRule rule, std::vector<ClauseId> premises,
                     ActivationReport& report) {
  std::sort(premises.begin(), premises.end());
  premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
  ++state_.generated_;
  for (ClauseId p : premises) ++state_.records_.at(p).epsilon;
  ClauseId id = store(std::move(c), rule, std::move(premises));
  report.generated.push_back(id);
  if (state_.clauses_.at(id).empty()) {
    state_.empty_ = id;
    state_.log_.push_back(id);
    report.refutation = true;
    return true;
  }
  ContractResult cr = contract(state_.clauses_.at(id), id);
  if (cr.kind == ContractResult::Kind::kKept) {
    if (state_.clauses_.at(cr.id).empty()) {
      state_.empty_ = cr.id;
      state_.log_.push_back(cr.id);
      report.refutation = true;
      return true;
    }
    insert_passive(cr.id);
  }
  return false;
}

ActivationReport Saturator::activate() {
  ActivationReport report;
  if (state_.empty_) {
    report.refutation = true;
    return report;
  }
  if (state_.passive_.empty()) {
    report.passive_empty = true;
    return report;
  }
  ClauseId picked = select_given();
  remove_passive(picked);
  ++state_.activations_;
  ContractResult cr = contract(state_.clauses_.at(picked), picked);
  if (cr.kind != ContractResult::Kind::kKept) {
    report.deleted = true;
    return report;
  }
  ClauseId gid = cr.id;
  report.given = gid;
  state_.log_.push_back(gid);
  if (state_.clauses_.at(gid).empty()) {
    state_.empty_ = gid;
    report.refutation = true;
    return report;
  }
  report.back_removed = back_contract(gid);
  state_.active_.push_back(gid);
  if (state_.empty_) {
    report.refutation = true;
    return report;
  }

  const Clause g = state_.clauses_.at(gid);
  const TermOrder& ord = cfg_.order;
  const bool sup = calculus_ == Calculus::kSuperposition;
  auto emit_all = [&](std::vector<Clause> cs, InferenceRule rule,
                      std::vector<ClauseId> premises) {
    for (Clause& c : cs)
      if (emit(std::move(c), rule, premises, report)) return true;
    return false;
  };

  if (emit_all(factor(g, calculus_, ord), InferenceRule::kFactoring, {gid})) return report;
  if (sup) {
    if (emit_all(equality_resolve(g, ord), InferenceRule::kEqualityResolution, {gid}))
      return report;
    if (emit_all(equality_factor(g, ord), InferenceRule::kEqualityFactoring, {gid}))
      return report;
  }
  const std::vector<ClauseId> partners = state_.active_;
  for (ClauseId aid : partners) {
    if (!state_.is_active(aid)) continue;
    const Clause a = state_.clauses_.at(aid);
    if (emit_all(resolve(g, a, ord, !sup), InferenceRule::kResolution, {gid, aid}))
      return report;
    if (!sup) continue;
    if (emit_all(superpose(g, a, ord), InferenceRule::kSuperposition, {gid, aid}))
      return report;
    if (aid != gid &&
        emit_all(superpose(a, g, ord), InferenceRule::kSuperposition, {aid, gid}))
      return report;
  }
  return report;
}

SaturationResult Saturator::run(const SaturationLimits& limits) {
  SaturationResult res;
  auto finish = [&] {
    res.activations = state_.activations_;
    res.generated = state_.generated_;
    return res;
  };
  for (;;) {
    if (state_.empty_) {
      Refutation r;
      r.derivation = derivation(*state_.empty_);
      for (const DerivationStep& s : r.derivation)
        if (s.rule != InferenceRule::kInput) ++r.inferences;
      res.outcome = std::move(r);
      return finish();
    }
    if (limits.max_activations && state_.activations_ >= limits.max_activations) {
      res.outcome = SaturationLimit{"activation limit"};
      return finish();
    }
    if (limits.max_generated && state_.generated_ >= limits.max_generated) {
      res.outcome = SaturationLimit{"generation limit"};
      return finish();
    }
    if (limits.stop.stop_requested()) {
      res.outcome = SaturationLimit{"stopped"};
      return finish();
    }
    if (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline) {
      res.outcome = SaturationLimit{"deadline"};
      return finish();
    }
    ActivationReport rep = activate();
    if (rep.passive_empty) {
      res.outcome = Saturated{};
      return finish();
    }
  }
}

std::vector<DerivationStep> Saturator::derivation(ClauseId id) const {
  std::vector<DerivationStep> out;
  std::set<ClauseId> seen;
  std::vector<std::pair<ClauseId, bool>> stack{{id, false}};
  while (!stack.empty()) {
    auto [cur, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      const DerivationRecord& r = state_.records_.at(cur);
      out.push_back({cur, r.rule, r.premises, to_string(state_.clauses_.at(cur))});
      continue;
    }
    if (!seen.insert(cur).second) continue;
    stack.push_back({cur, true});
    const auto& prem = state_.records_.at(cur).premises;
    for (auto it = prem.rbegin(); it != prem.rend(); ++it)
      if (!seen.count(*it)) stack.push_back({*it, false});
  }
  return out;
}

SaturationResult saturate(const Problem& p, const SaturationConfig& cfg,
                          const SaturationLimits& limits) {
  return Saturator(p, cfg).run(limits);
}

Preprocessed preprocess(const Problem& p, std::uint64_t i, const SaturationConfig& cfg,
                        const SaturationLimits& limits) {
  Preprocessed out;
  out.saturator = std::make_unique<Saturator>(p, cfg);
  Saturator& s = *out.saturator;
  for (std::uint64_t k = 0; k < i; ++k) {
    if (limits.stop.stop_requested()) break;
    if (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline) break;
    ActivationReport rep = s.activate();
    if (rep.refutation) {
      out.refuted = true;
      break;
    }
    if (rep.passive_empty) break;
  }
  if (s.state().empty_clause()) out.refuted = true;
  out.facts = s.state().facts();
  return out;
}

}  // namespace tdbu
