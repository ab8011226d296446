#include "tdbu/orchestrator.hpp"

#include <condition_variable>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace tdbu {

using nlohmann::json;
using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

std::string_view status_name(EngineOutcome::Status s) {
  switch (s) {
    case EngineOutcome::Status::kProved: return "proved";
    case EngineOutcome::Status::kExhausted: return "exhausted";
    case EngineOutcome::Status::kLimit: return "limit";
    case EngineOutcome::Status::kFault: return "fault";
  }
  return "?";
}

namespace {

EngineOutcome guarded(const EngineTask& task, std::stop_token stop) {
  try {
    return task(stop);
  } catch (const std::exception& e) {
    EngineOutcome o;
    o.status = EngineOutcome::Status::kFault;
    o.message = e.what();
    return o;
  } catch (...) {
    EngineOutcome o;
    o.status = EngineOutcome::Status::kFault;
    o.message = "unknown exception";
    return o;
  }
}

bool proved(const EngineOutcome& o) { return o.status == EngineOutcome::Status::kProved; }

}  // namespace

RaceResult race(std::vector<EngineLaunch> engines, Deadline deadline, bool sequential) {
  RaceResult r;
  const std::size_t n = engines.size();
  r.outcomes.resize(n);

  if (sequential) {
    for (std::size_t i = 0; i < n; ++i) {
      r.outcomes[i] = guarded(engines[i].task, std::stop_token{});
      r.log.push_back(engines[i].name + ": " + std::string(status_name(r.outcomes[i].status)));
      if (proved(r.outcomes[i]) &&
          (!r.winner || r.outcomes[i].inferences < r.outcomes[*r.winner].inferences))
        r.winner = i;
    }
    return r;
  }

  std::mutex mu;
  std::condition_variable cv;
  std::vector<bool> done(n, false);
  std::vector<std::jthread> threads;
  threads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    threads.emplace_back([&, i](std::stop_token st) {
      EngineOutcome o = guarded(engines[i].task, st);
      std::lock_guard lock(mu);
      r.outcomes[i] = std::move(o);
      done[i] = true;
      cv.notify_all();
    });
  }

  {
    std::unique_lock lock(mu);
    auto settled = [&] {
      bool all = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i] && proved(r.outcomes[i])) return true;
        all = all && done[i];
      }
      return all;
    };
    if (deadline) {
      cv.wait_until(lock, *deadline, settled);
    } else {
      cv.wait(lock, settled);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (done[i] && proved(r.outcomes[i])) {
        r.winner = i;
        r.log.push_back(engines[i].name + ": proved");
        break;
      }
    if (!r.winner && !settled()) r.log.push_back("deadline reached");
  }

  for (std::size_t i = 0; i < n; ++i) {
    bool finished;
    {
      std::lock_guard lock(mu);
      finished = done[i];
    }
    if (!finished) {
      threads[i].request_stop();
      r.log.push_back(engines[i].name + ": stop requested");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    threads[i].join();
    if (!r.winner || *r.winner != i)
      r.log.push_back(engines[i].name + ": " + std::string(status_name(r.outcomes[i].status)) +
                      (r.outcomes[i].message.empty() ? "" : " (" + r.outcomes[i].message + ")"));
  }
  return r;
}

SaturationConfig saturation_config(const Problem& p, const CooperationConfig& cfg) {
  SaturationConfig s;
  s.calculus = Calculus::kAuto;
  s.order = cfg.ordering == OrderingMode::kPrecedence ? TermOrder::for_problem(p) : TermOrder();
  s.heuristic = Heuristic::standard(cfg.fifo_period);
  return s;
}

json tableau_proof_json(const TableauProof& proof, const Problem& p) {
  json steps = json::array();
  json clauses = json::object();
  for (const ProofStep& s : proof.steps) {
    json j = {{"rule", std::string(rule_name(s.rule))},
              {"subgoal", s.subgoal},
              {"clause", s.clause},
              {"literal", s.literal},
              {"ancestor", s.ancestor}};
    steps.push_back(j);
    if (s.rule != Rule::kReduction)
      if (const Clause* c = p.find(s.clause)) clauses[std::to_string(s.clause)] = to_string(*c);
  }
  return {{"engine", "me"},
          {"resource", proof.resource},
          {"inferences", proof.steps.size()},
          {"steps", steps},
          {"clauses", clauses},
          {"unifier", proof.unifier}};
}

json refutation_json(const Refutation& r) {
  json steps = json::array();
  for (const DerivationStep& s : r.derivation)
    steps.push_back({{"id", s.id},
                     {"rule", std::string(inference_rule_name(s.rule))},
                     {"premises", s.premises},
                     {"clause", s.clause}});
  return {{"engine", "sat"}, {"inferences", r.inferences}, {"derivation", steps}};
}

EngineOutcome run_me(const Problem& p, const CooperationConfig& cfg, std::stop_token stop,
                     Deadline deadline) {
  ProveOptions o;
  o.mode = cfg.mode;
  o.bound = cfg.bound;
  o.initial_resource = cfg.initial_resource;
  o.step = cfg.step;
  o.limits.max_resource = cfg.max_resource;
  o.limits.max_inferences = cfg.me_max_inferences;
  o.limits.deadline = deadline;
  o.limits.stop = stop;
  ProveResult res = prove(p, o);
  EngineOutcome out;
  if (const auto* c = std::get_if<Closed>(&res.outcome)) {
    out.status = EngineOutcome::Status::kProved;
    out.inferences = c->proof.steps.size();
    out.resource = c->proof.resource;
    out.proof = tableau_proof_json(c->proof, p);
  } else if (const auto* e = std::get_if<Exhausted>(&res.outcome)) {
    out.status = EngineOutcome::Status::kExhausted;
    out.message = e->reason;
  } else {
    const auto& l = std::get<LimitReached>(res.outcome);
    out.status = EngineOutcome::Status::kLimit;
    out.resource = l.last_complete;
    out.message = l.reason;
  }
  return out;
}

EngineOutcome run_sat(const Problem& p, const CooperationConfig& cfg, std::stop_token stop,
                      Deadline deadline) {
  SaturationLimits limits;
  limits.max_generated = cfg.sat_max_generated;
  limits.max_activations = cfg.sat_max_activations;
  limits.deadline = deadline;
  limits.stop = stop;
  SaturationResult res = saturate(p, saturation_config(p, cfg), limits);
  EngineOutcome out;
  out.resource = res.activations;
  if (const auto* r = std::get_if<Refutation>(&res.outcome)) {
    out.status = EngineOutcome::Status::kProved;
    out.inferences = r->inferences;
    out.proof = refutation_json(*r);
  } else if (std::holds_alternative<Saturated>(res.outcome)) {
    out.status = EngineOutcome::Status::kExhausted;
    out.message = "saturated";
  } else {
    out.status = EngineOutcome::Status::kLimit;
    out.message = std::get<SaturationLimit>(res.outcome).reason;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proof checking

namespace {

Clause parse_clause(const std::string& text) {
  Problem p = parse_problem("cnf(c, axiom, " + text + ").");
  return p.clauses.at(0);
}

bool contains_variant(const std::vector<Clause>& cs, const Clause& c) {
  for (const Clause& d : cs)
    if (variant_equal(d, c)) return true;
  return false;
}

bool rewriting_reaches(const Clause& from, const std::vector<Clause>& units,
                       const Clause& target, const std::vector<TermOrder>& orders) {
  std::vector<Clause> frontier{from};
  std::vector<Clause> seen{from};
  for (int depth = 0; depth < 12 && !frontier.empty(); ++depth) {
    std::vector<Clause> next;
    for (const Clause& c : frontier)
      for (const Clause& u : units)
        for (const TermOrder& ord : orders)
          for (Clause& d : superpose(u, c, ord)) {
            if (variant_equal(d, target)) return true;
            if (d.size() != c.size() || contains_variant(seen, d)) continue;
            seen.push_back(d);
            next.push_back(std::move(d));
          }
    if (next.size() > 2000) next.resize(2000);
    frontier = std::move(next);
  }
  return false;
}

bool check_step(const std::string& rule, const std::vector<Clause>& prem, const Clause& concl,
                const std::vector<TermOrder>& orders) {
  std::vector<Clause> out;
  for (const TermOrder& ord : orders) {
    auto add = [&](std::vector<Clause> v) { out.insert(out.end(), v.begin(), v.end()); };
    if (rule == "resolution") {
      if (prem.size() == 1) add(resolve(prem[0], prem[0], ord));
      if (prem.size() == 2) {
        add(resolve(prem[0], prem[1], ord));
        add(resolve(prem[1], prem[0], ord));
      }
    } else if (rule == "factoring" && prem.size() == 1) {
      add(factor(prem[0], Calculus::kResolution, ord));
    } else if (rule == "superposition") {
      if (prem.size() == 1) add(superpose(prem[0], prem[0], ord));
      if (prem.size() == 2) {
        add(superpose(prem[0], prem[1], ord));
        add(superpose(prem[1], prem[0], ord));
      }
    } else if (rule == "equality_resolution" && prem.size() == 1) {
      add(equality_resolve(prem[0], ord));
    } else if (rule == "equality_factoring" && prem.size() == 1) {
      add(equality_factor(prem[0], ord));
    }
  }
  if (rule == "rewriting" && prem.size() >= 2) {
    std::vector<Clause> units(prem.begin() + 1, prem.end());
    return rewriting_reaches(prem[0], units, concl, orders);
  }
  return contains_variant(out, concl);
}

std::string verify_derivation(const json& proof) {
  std::map<std::uint64_t, Clause> by_id;
  std::vector<std::tuple<std::uint64_t, std::string, std::vector<std::uint64_t>>> steps;
  for (const json& s : proof.at("derivation")) {
    std::uint64_t id = s.at("id").get<std::uint64_t>();
    Clause c = parse_clause(s.at("clause").get<std::string>());
    by_id.emplace(id, c);
    steps.emplace_back(id, s.at("rule").get<std::string>(),
                       s.at("premises").get<std::vector<std::uint64_t>>());
  }
  if (steps.empty() || !by_id.at(std::get<0>(steps.back())).empty())
    return "derivation does not end in the empty clause";

  // The empty order admits a superset of the ordered inferences except for
  // oriented equality factoring; a precedence built from the symbols covers
  // the default ordering.
  Problem scratch;
  for (const auto& [id, c] : by_id) scratch.add(c);
  std::vector<TermOrder> orders{TermOrder(), TermOrder::for_problem(scratch)};

  for (const auto& [id, rule, premises] : steps) {
    if (rule == "input") continue;
    std::vector<Clause> prem;
    for (std::uint64_t p : premises) {
      auto it = by_id.find(p);
      if (it == by_id.end()) return "step " + std::to_string(id) + ": unknown premise";
      prem.push_back(it->second);
    }
    if (!check_step(rule, prem, by_id.at(id), orders))
      return "step " + std::to_string(id) + " (" + rule + ") does not follow";
  }
  return {};
}

std::string verify_tableau(const json& proof) {
  std::vector<Clause> clauses;
  for (const auto& [id, text] : proof.at("clauses").items()) {
    Clause c = parse_clause(text.get<std::string>());
    c.set_id(std::stoull(id));
    clauses.push_back(std::move(c));
  }
  TableauProof tp;
  tp.resource = proof.at("resource").get<std::uint32_t>();
  for (const json& s : proof.at("steps")) {
    ProofStep st;
    std::string rule = s.at("rule").get<std::string>();
    if (rule == rule_name(Rule::kStart)) {
      st.rule = Rule::kStart;
    } else if (rule == rule_name(Rule::kExtension)) {
      st.rule = Rule::kExtension;
    } else if (rule == rule_name(Rule::kReduction)) {
      st.rule = Rule::kReduction;
    } else {
      return "unknown rule " + rule;
    }
    st.subgoal = s.at("subgoal").get<std::uint32_t>();
    st.clause = s.at("clause").get<ClauseId>();
    st.literal = s.at("literal").get<std::uint32_t>();
    st.ancestor = s.at("ancestor").get<std::uint32_t>();
    tp.steps.push_back(st);
  }
  if (!replay(tp, clauses)) return "tableau proof does not replay to a closed tableau";
  return {};
}

}  // namespace

std::string verify_proof(const json& proof) {
  try {
    std::string engine = proof.at("engine").get<std::string>();
    if (engine == "me") return verify_tableau(proof);
    if (engine == "sat") return verify_derivation(proof);
    return "unknown engine " + engine;
  } catch (const std::exception& e) {
    return std::string("malformed proof: ") + e.what();
  }
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

}  // namespace

Report run_pipeline(const Problem& p, const CooperationConfig& cfg,
                    PipelineArtifacts* artifacts) {
  const auto t0 = Clock::now();
  Report report;
  report.problem = p.name;
  if (cfg.timeout_s <= 0.0) {
    report.result = "timeout";
    return report;
  }
  const Deadline deadline =
      t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.timeout_s));

  const Problem p_me = add_equality_axioms(p);
  const SaturationConfig sat_cfg = saturation_config(p, cfg);

  // Phase A
  EnumerateResult td;
  Preprocessed bu;
  double td_ms = 0.0, bu_ms = 0.0;
  auto run_td = [&] {
    auto t = Clock::now();
    SearchLimits limits;
    limits.max_inferences = cfg.td_max_steps;
    limits.deadline = deadline;
    ClauseWeight h = default_clause_weight;
    td = cfg.variant == 1 ? generate_variant1(p_me, cfg.mode, cfg.weights, limits)
                          : generate_variant2(p_me, cfg.mode, h, cfg.weights, limits);
    td_ms = ms_since(t);
  };
  auto run_bu = [&](std::uint64_t i, std::stop_token stop) {
    auto t = Clock::now();
    SaturationLimits limits;
    limits.deadline = deadline;
    limits.stop = stop;
    bu = preprocess(p, i, sat_cfg, limits);
    bu_ms = ms_since(t);
  };
  if (cfg.deterministic) {
    run_td();
    run_bu(cfg.activations, {});
  } else if (cfg.bu_until_td) {
    std::jthread worker([&](std::stop_token st) {
      run_bu(std::numeric_limits<std::uint64_t>::max(), st);
    });
    run_td();
    worker.request_stop();
  } else {
    std::jthread worker([&] { run_bu(cfg.activations, {}); });
    run_td();
  }

  // Phase B
  const auto tb = Clock::now();
  std::vector<Clause> units = unit_clauses(p_me);
  std::vector<Clause> c_td = select_subgoal_clauses(td.records, cfg.weights.m,
                                                    default_clause_weight, units, cfg.weights);
  std::vector<LemmaCandidate> facts = lemma_candidates(bu.saturator->state(), bu.facts);
  std::vector<SelectedLemma> c_bu = select_lemmas(facts, td.records, cfg.quotas, p.has_equality);
  const double filter_ms = ms_since(tb);

  report.counts.subgoal_candidates = td.records.size();
  report.counts.transferred_subgoals = c_td.size();
  report.counts.facts = facts.size();
  report.counts.lemmas = c_bu.size();

  // Phase C
  const auto tc = Clock::now();
  Problem me_input = p_me;
  for (std::size_t i = 0; i < c_bu.size(); ++i)
    me_input.add(c_bu[i].clause, "lemma_" + std::to_string(i + 1));
  Problem sat_input = p;
  for (std::size_t i = 0; i < c_td.size(); ++i)
    sat_input.add(c_td[i], "subgoal_" + std::to_string(i + 1));

  RaceResult rr;
  if (bu.refuted) {
    // The preprocessing already derived the empty clause.
    EngineOutcome o;
    o.status = EngineOutcome::Status::kProved;
    o.resource = bu.saturator->state().activations();
    Refutation ref;
    ref.derivation = bu.saturator->derivation(*bu.saturator->state().empty_clause());
    for (const DerivationStep& s : ref.derivation)
      if (s.rule != InferenceRule::kInput) ++ref.inferences;
    o.inferences = ref.inferences;
    o.proof = refutation_json(ref);
    rr.outcomes = {EngineOutcome{}, std::move(o)};
    rr.outcomes[0].message = "not started";
    rr.winner = 1;
    rr.log.push_back("sat: refuted during preprocessing");
  } else {
    std::vector<EngineLaunch> engines;
    engines.push_back({"me", [&](std::stop_token st) { return run_me(me_input, cfg, st, deadline); }});
    engines.push_back({"sat", [&](std::stop_token st) { return run_sat(sat_input, cfg, st, deadline); }});
    rr = race(std::move(engines), deadline, cfg.deterministic);
  }
  const double race_ms = ms_since(tc);

  if (rr.winner) {
    const EngineOutcome& w = rr.outcomes[*rr.winner];
    report.result = "unsat";
    report.winner = *rr.winner == 0 ? "me" : "sat";
    report.resource = w.resource;
    report.proof = w.proof;
  } else {
    bool exhausted = false;
    for (const EngineOutcome& o : rr.outcomes)
      exhausted = exhausted || o.status == EngineOutcome::Status::kExhausted;
    report.result = exhausted ? "exhausted" : "timeout";
  }

  if (!cfg.deterministic) {
    report.phases = {td_ms, bu_ms, filter_ms, race_ms};
    report.wall_ms = ms_since(t0);
  }
  if (artifacts) {
    artifacts->candidates = std::move(td.records);
    artifacts->transferred_subgoals = std::move(c_td);
    artifacts->facts = std::move(facts);
    artifacts->lemmas = std::move(c_bu);
    artifacts->race = std::move(rr);
  }
  return report;
}

}  // namespace tdbu
