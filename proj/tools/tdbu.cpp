// tdbu: command line front end for the cooperating provers.
//
//   tdbu solve FILE      full pipeline, prints a report
//   tdbu me FILE         connection tableau engine alone
//   tdbu sat FILE        saturation engine alone
//   tdbu subgoals FILE   subgoal clause generation
//   tdbu lemmas FILE     lemma selection after preprocessing
//   tdbu oracle FILE     minimal proof length search
//
// Exit codes: 0 unsat proved, 1 no result, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "tdbu/orchestrator.hpp"

using namespace tdbu;
using nlohmann::json;

namespace {

constexpr int kProved = 0;
constexpr int kNoResult = 1;
constexpr int kInputError = 2;

struct Options {
  std::string file;
  std::string mode = "ctcneg";
  int variant = 2;
  std::string bound = "depth";
  std::uint32_t resource = 1;
  std::uint32_t step = 1;
  std::uint32_t max_resource = 64;
  std::uint32_t k = 10, k1 = 9, k2 = 9;
  std::size_t nsg = 500, nref = 5, max_subgoals = 30, per_filter = 10;
  std::uint64_t activations = 2000;
  std::string ordering = "precedence";
  std::string calculus = "auto";
  double timeout = 300.0;
  bool deterministic = false;
  bool bu_until_td = false;
  std::string output = "json";
  std::uint32_t max_length = 12;
  std::uint64_t budget = 2'000'000'000;
};

CooperationConfig to_config(const Options& o) {
  CooperationConfig c;
  c.mode = o.mode == "ctc" ? StartMode::kAll : StartMode::kNegative;
  c.variant = o.variant;
  c.bound.kind = o.bound == "depth"      ? BoundKind::kDepth
                 : o.bound == "weighted" ? BoundKind::kWeightedDepth
                                         : BoundKind::kInference;
  c.initial_resource = o.resource;
  c.step = o.step;
  c.max_resource = o.max_resource;
  c.weights.k = o.k;
  c.weights.k1 = o.k1;
  c.weights.k2 = o.k2;
  c.weights.n_sg = o.nsg;
  c.weights.n_ref = o.nref;
  c.weights.m = o.max_subgoals;
  c.quotas.per_filter = o.per_filter;
  c.activations = o.activations;
  c.ordering = o.ordering == "none" ? OrderingMode::kNone : OrderingMode::kPrecedence;
  c.timeout_s = o.timeout;
  c.deterministic = o.deterministic;
  c.bu_until_td = o.bu_until_td;
  return c;
}

std::optional<std::chrono::steady_clock::time_point> deadline_for(double seconds) {
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::duration<double>(seconds));
}

void print(const json& j, const std::string& text, const Options& o) {
  if (o.output == "json") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

std::string outcome_text(const std::string& problem, const EngineOutcome& r) {
  std::string s = "problem: " + problem + "\nresult: " + std::string(status_name(r.status)) +
                  "\nresource: " + std::to_string(r.resource) +
                  "\ninferences: " + std::to_string(r.inferences) + "\n";
  if (!r.message.empty()) s += "message: " + r.message + "\n";
  if (r.status == EngineOutcome::Status::kProved) {
    Report rep;
    rep.proof = r.proof;
    std::string full = emit_report(rep, OutputFormat::kText);
    s += full.substr(full.find("proof"));
  }
  return s;
}

json outcome_json(const std::string& problem, const EngineOutcome& r) {
  json j = {{"problem", problem},
            {"result", std::string(status_name(r.status))},
            {"resource", r.resource},
            {"inferences", r.inferences}};
  if (!r.message.empty()) j["message"] = r.message;
  if (r.status == EngineOutcome::Status::kProved) j["proof"] = r.proof;
  return j;
}

int cmd_solve(const Problem& p, const Options& o) {
  Report r = run_pipeline(p, to_config(o));
  std::cout << emit_report(r, o.output == "json" ? OutputFormat::kJson : OutputFormat::kText);
  return r.result == "unsat" ? kProved : kNoResult;
}

int cmd_me(const Problem& p, const Options& o) {
  CooperationConfig c = to_config(o);
  EngineOutcome r = run_me(add_equality_axioms(p), c, {}, deadline_for(o.timeout));
  print(outcome_json(p.name, r), outcome_text(p.name, r), o);
  return r.status == EngineOutcome::Status::kProved ? kProved : kNoResult;
}

int cmd_sat(const Problem& p, const Options& o) {
  CooperationConfig c = to_config(o);
  c.sat_max_activations = o.activations;
  EngineOutcome r = run_sat(p, c, {}, deadline_for(o.timeout));
  print(outcome_json(p.name, r), outcome_text(p.name, r), o);
  return r.status == EngineOutcome::Status::kProved ? kProved : kNoResult;
}

EnumerateResult subgoal_candidates(const Problem& p_me, const CooperationConfig& c,
                                   const Options& o) {
  SearchLimits limits;
  limits.max_inferences = c.td_max_steps;
  limits.deadline = deadline_for(o.timeout);
  return c.variant == 1 ? generate_variant1(p_me, c.mode, c.weights, limits)
                        : generate_variant2(p_me, c.mode, default_clause_weight, c.weights,
                                            limits);
}

int cmd_subgoals(const Problem& p, const Options& o) {
  CooperationConfig c = to_config(o);
  Problem p_me = add_equality_axioms(p);
  EnumerateResult res = subgoal_candidates(p_me, c, o);
  std::vector<Clause> units = unit_clauses(p_me);
  std::vector<double> scores;
  for (const auto& r : res.records)
    scores.push_back(phi(r, default_clause_weight, units, c.weights));
  std::vector<std::size_t> order = rank_records(res.records, scores);

  json records = json::array();
  std::string text = "% problem: " + p.name + "\n% candidates: " +
                     std::to_string(res.records.size()) +
                     (res.proof_found ? "\n% closed tableau found\n" : "\n");
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const SubgoalClauseRecord& r = res.records[i];
    std::string name = "sg_" + std::to_string(i + 1);
    records.push_back({{"name", name},
                       {"clause", to_string(r.clause)},
                       {"inferences", r.inferences},
                       {"start_clause", r.start_clause},
                       {"phi", scores[i]}});
    text += "cnf(" + name + ", axiom, " + to_string(r.clause) + ").\n";
  }
  text += "% name inferences start_clause\n";
  for (std::size_t i = 0; i < res.records.size(); ++i)
    text += "% sg_" + std::to_string(i + 1) + " " + std::to_string(res.records[i].inferences) +
            " " + std::to_string(res.records[i].start_clause) + "\n";
  json selected = json::array();
  text += "% selected:";
  for (std::size_t i = 0; i < std::min(c.weights.m, order.size()); ++i) {
    selected.push_back("sg_" + std::to_string(order[i] + 1));
    text += " sg_" + std::to_string(order[i] + 1);
  }
  text += "\n";
  json j = {{"problem", p.name},
            {"records", records},
            {"selected", selected},
            {"proof_found", res.proof_found},
            {"truncated", res.truncated},
            {"tableaux", res.tableaux}};
  print(j, text, o);
  return kProved;
}

int cmd_lemmas(const Problem& p, const Options& o) {
  CooperationConfig c = to_config(o);
  Problem p_me = add_equality_axioms(p);
  EnumerateResult pool = subgoal_candidates(p_me, c, o);
  SaturationLimits limits;
  limits.deadline = deadline_for(o.timeout);
  Preprocessed bu = preprocess(p, c.activations, saturation_config(p, c), limits);
  std::vector<LemmaCandidate> facts = lemma_candidates(bu.saturator->state(), bu.facts);
  std::vector<SelectedLemma> lemmas = select_lemmas(facts, pool.records, c.quotas, p.has_equality);

  json out = json::array();
  std::string text = "% problem: " + p.name + "\n% facts: " + std::to_string(facts.size()) +
                     (bu.refuted ? "\n% empty clause derived during preprocessing\n" : "\n");
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    const SelectedLemma& l = lemmas[i];
    json reasons = json::array();
    std::string why;
    for (const auto& [filter, score] : l.reasons) {
      reasons.push_back({{"filter", filter}, {"score", score}});
      why += " " + filter + "=" + std::to_string(score);
    }
    out.push_back({{"clause", to_string(l.clause)}, {"reasons", reasons}});
    text += "cnf(lemma_" + std::to_string(i + 1) + ", axiom, " + to_string(l.clause) + ").  %" +
            why + "\n";
  }
  json j = {{"problem", p.name}, {"facts", facts.size()}, {"lemmas", out}};
  print(j, text, o);
  return kProved;
}

int cmd_oracle(const Problem& p, const Options& o) {
  Calculus calc = o.calculus == "superposition" ? Calculus::kSuperposition
                  : o.calculus == "resolution"  ? Calculus::kResolution
                  : p.has_equality              ? Calculus::kSuperposition
                                                : Calculus::kResolution;
  TermOrder ord = o.ordering == "precedence" ? TermOrder::for_problem(p) : TermOrder();
  ProofLengthResult r = min_proof_length(p.clauses, calc, ord, o.max_length, o.budget);
  std::string status = r.status == ProofLengthResult::Status::kFound ? "found"
                       : r.status == ProofLengthResult::Status::kNone
                           ? "none"
                           : "budget_exceeded";
  json j = {{"problem", p.name}, {"result", status}, {"nodes", r.nodes}};
  if (r.status == ProofLengthResult::Status::kFound) j["length"] = r.length;
  std::string text = "problem: " + p.name + "\nresult: " + status + "\n" +
                     (r.status == ProofLengthResult::Status::kFound
                          ? "length: " + std::to_string(r.length) + "\n"
                          : "") +
                     "nodes: " + std::to_string(r.nodes) + "\n";
  print(j, text, o);
  return r.status == ProofLengthResult::Status::kFound ? kProved : kNoResult;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperating connection tableau and saturation provers"};
  app.set_config("--config", "", "File of key=value lines mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--mode", o.mode, "Start clauses: all (ctc) or negative (ctcneg)")
      ->check(CLI::IsMember({"ctc", "ctcneg"}));
  app.add_option("--variant", o.variant, "Subgoal generation variant")
      ->check(CLI::IsMember({1, 2}));
  app.add_option("--bound", o.bound, "Tableau completeness bound")
      ->check(CLI::IsMember({"depth", "inference", "weighted"}));
  app.add_option("--resource", o.resource, "Initial resource of the tableau engine");
  app.add_option("--step", o.step, "Resource increment per round")->check(CLI::PositiveNumber);
  app.add_option("--max-resource", o.max_resource, "Largest resource tried");
  app.add_option("--k", o.k, "Resource of variant 1 subgoal generation");
  app.add_option("--nsg", o.nsg, "Cap on variant 1 subgoal clauses");
  app.add_option("--k1", o.k1, "First resource of variant 2");
  app.add_option("--k2", o.k2, "Second resource of variant 2");
  app.add_option("--nref", o.nref, "Refined subgoal clauses of variant 2");
  app.add_option("--max-subgoals", o.max_subgoals, "Transferred subgoal clauses");
  app.add_option("--lemmas-per-filter", o.per_filter, "Lemmas per filter");
  app.add_option("--activations", o.activations, "Saturation activations");
  app.add_option("--ordering", o.ordering, "Term ordering")
      ->check(CLI::IsMember({"none", "precedence"}));
  app.add_option("--calculus", o.calculus, "Oracle calculus")
      ->check(CLI::IsMember({"auto", "resolution", "superposition"}));
  app.add_option("--timeout", o.timeout, "Timeout in seconds")->check(CLI::NonNegativeNumber);
  app.add_flag("--deterministic", o.deterministic, "Sequential, reproducible run");
  app.add_flag("--bu-until-td", o.bu_until_td,
               "Saturate until subgoal generation finishes instead of a fixed count");
  app.add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-length", o.max_length, "Oracle: longest proof tried");
  app.add_option("--budget", o.budget, "Oracle: node budget");

  std::map<std::string, int (*)(const Problem&, const Options&)> commands{
      {"solve", cmd_solve}, {"me", cmd_me},         {"sat", cmd_sat},
      {"subgoals", cmd_subgoals}, {"lemmas", cmd_lemmas}, {"oracle", cmd_oracle}};
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, "");
    sub->add_option("file", o.file, "Problem file")->required();
  }
  app.get_subcommand("solve")->description("Run the full cooperation pipeline");
  app.get_subcommand("me")->description("Run the connection tableau engine");
  app.get_subcommand("sat")->description("Run the saturation engine");
  app.get_subcommand("subgoals")->description("Generate and rank subgoal clauses");
  app.get_subcommand("lemmas")->description("Preprocess and select lemmas");
  app.get_subcommand("oracle")->description("Search for a minimal refutation length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  Problem p;
  try {
    p = load_problem(o.file);
  } catch (const ParseError& e) {
    std::cerr << o.file << ":" << e.line() << ":" << e.column() << ": " << e.message() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  }

  for (const auto& [name, fn] : commands)
    if (app.got_subcommand(name)) return fn(p, o);
  return kInputError;
}
