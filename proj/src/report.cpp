#include "tdbu/report.hpp"

#include <sstream>

namespace tdbu {

using nlohmann::json;

json to_json(const Report& r) {
  json j;
  j["problem"] = r.problem;
  j["result"] = r.result;
  j["winner"] = r.winner;
  j["wall_ms"] = r.wall_ms;
  j["phases"] = {{"td_preprocess_ms", r.phases.td_preprocess_ms},
                 {"bu_preprocess_ms", r.phases.bu_preprocess_ms},
                 {"filter_ms", r.phases.filter_ms},
                 {"race_ms", r.phases.race_ms}};
  j["counts"] = {{"subgoal_candidates", r.counts.subgoal_candidates},
                 {"transferred_subgoals", r.counts.transferred_subgoals},
                 {"facts", r.counts.facts},
                 {"lemmas", r.counts.lemmas}};
  j["resource"] = r.resource ? json(*r.resource) : json(nullptr);
  if (r.proof) j["proof"] = *r.proof;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.problem = j.at("problem").get<std::string>();
  r.result = j.at("result").get<std::string>();
  r.winner = j.at("winner").get<std::string>();
  r.wall_ms = j.at("wall_ms").get<double>();
  const json& p = j.at("phases");
  r.phases.td_preprocess_ms = p.at("td_preprocess_ms").get<double>();
  r.phases.bu_preprocess_ms = p.at("bu_preprocess_ms").get<double>();
  r.phases.filter_ms = p.at("filter_ms").get<double>();
  r.phases.race_ms = p.at("race_ms").get<double>();
  const json& c = j.at("counts");
  r.counts.subgoal_candidates = c.at("subgoal_candidates").get<std::uint64_t>();
  r.counts.transferred_subgoals = c.at("transferred_subgoals").get<std::uint64_t>();
  r.counts.facts = c.at("facts").get<std::uint64_t>();
  r.counts.lemmas = c.at("lemmas").get<std::uint64_t>();
  if (j.contains("resource") && !j.at("resource").is_null())
    r.resource = j.at("resource").get<std::uint64_t>();
  if (j.contains("proof")) r.proof = j.at("proof");
  return r;
}

namespace {

void proof_text(const json& proof, std::ostringstream& out) {
  const std::string engine = proof.value("engine", "");
  if (engine == "me") {
    out << "proof (connection tableau, resource " << proof.value("resource", 0) << "):\n";
    const json& texts = proof.at("clauses");
    for (const json& s : proof.at("steps")) {
      out << "  " << s.at("rule").get<std::string>() << " subgoal=" << s.at("subgoal");
      if (s.at("rule") == "reduction") {
        out << " ancestor=" << s.at("ancestor");
      } else {
        std::string id = std::to_string(s.at("clause").get<std::uint64_t>());
        out << " clause=" << id << " literal=" << s.at("literal");
        if (texts.contains(id)) out << "  " << texts.at(id).get<std::string>();
      }
      out << '\n';
    }
  } else {
    out << "proof (saturation, " << proof.value("inferences", 0) << " inferences):\n";
    for (const json& s : proof.at("derivation")) {
      out << "  " << s.at("id") << ". " << s.at("clause").get<std::string>() << "  ["
          << s.at("rule").get<std::string>();
      for (const json& p : s.at("premises")) out << ' ' << p;
      out << "]\n";
    }
  }
}

}  // namespace

std::string emit_report(const Report& r, OutputFormat format) {
  if (format == OutputFormat::kJson) return to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "problem: " << r.problem << '\n'
      << "result: " << r.result << '\n'
      << "winner: " << r.winner << '\n'
      << "wall_ms: " << r.wall_ms << '\n'
      << "phases: td_preprocess_ms=" << r.phases.td_preprocess_ms
      << " bu_preprocess_ms=" << r.phases.bu_preprocess_ms
      << " filter_ms=" << r.phases.filter_ms << " race_ms=" << r.phases.race_ms << '\n'
      << "counts: subgoal_candidates=" << r.counts.subgoal_candidates
      << " transferred_subgoals=" << r.counts.transferred_subgoals
      << " facts=" << r.counts.facts << " lemmas=" << r.counts.lemmas << '\n'
      << "resource: " << (r.resource ? std::to_string(*r.resource) : "none") << '\n';
  if (r.proof) proof_text(*r.proof, out);
  return out.str();
}

}  // namespace tdbu
