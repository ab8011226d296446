#include <doctest.h>

#include <atomic>
#include <thread>

#include "support.hpp"
#include "tdbu/orchestrator.hpp"

using namespace tdbu;
using namespace tdbu::test;
using namespace std::chrono_literals;

namespace {

EngineOutcome proved(std::uint64_t inferences) {
  EngineOutcome o;
  o.status = EngineOutcome::Status::kProved;
  o.inferences = inferences;
  return o;
}

EngineOutcome exhausted() {
  EngineOutcome o;
  o.status = EngineOutcome::Status::kExhausted;
  return o;
}

CooperationConfig small_config() {
  CooperationConfig cfg;
  cfg.deterministic = true;
  cfg.timeout_s = 60;
  cfg.weights.k1 = 4;
  cfg.weights.k2 = 3;
  cfg.activations = 50;
  return cfg;
}

}  // namespace

TEST_CASE("report round trip") {
  Report r;
  r.problem = "x";
  r.result = "unsat";
  r.winner = "me";
  r.wall_ms = 12.5;
  r.phases.race_ms = 3;
  r.counts = {4, 3, 2, 1};
  r.resource = 7;
  r.proof = nlohmann::json{{"engine", "me"}};
  CHECK(report_from_json(to_json(r)) == r);

  Report none;
  nlohmann::json j = to_json(none);
  CHECK(j["resource"].is_null());
  CHECK_FALSE(j.contains("proof"));
  CHECK(report_from_json(j) == none);
  CHECK_THROWS(report_from_json(nlohmann::json{{"problem", 3}}));
}

TEST_CASE("text report") {
  Report r;
  r.problem = "demo";
  r.counts = {5, 2, 9, 1};
  std::string text = emit_report(r, OutputFormat::kText);
  CHECK(text.find("demo") != std::string::npos);
  CHECK(text.find("timeout") != std::string::npos);
  CHECK(text.find("9") != std::string::npos);
  CHECK(nlohmann::json::parse(emit_report(r, OutputFormat::kJson)) == to_json(r));
}

TEST_CASE("race: the first proof wins and stops the other engine") {
  std::atomic<bool> stopped{false};
  std::vector<EngineLaunch> engines;
  engines.push_back({"me", [](std::stop_token) { return proved(3); }});
  engines.push_back({"sat", [&](std::stop_token st) {
                       while (!st.stop_requested()) std::this_thread::sleep_for(1ms);
                       stopped = true;
                       EngineOutcome o;
                       o.message = "stopped";
                       return o;
                     }});
  RaceResult r = race(std::move(engines), std::chrono::steady_clock::now() + 10s);
  REQUIRE(r.winner);
  CHECK(*r.winner == 0);
  CHECK(stopped);
}

TEST_CASE("race: no winner when every engine exhausts") {
  std::vector<EngineLaunch> engines;
  engines.push_back({"me", [](std::stop_token) { return exhausted(); }});
  engines.push_back({"sat", [](std::stop_token) { return exhausted(); }});
  RaceResult r = race(std::move(engines), std::nullopt);
  CHECK_FALSE(r.winner);
  CHECK(r.outcomes.size() == 2);
}

TEST_CASE("race: a throwing engine does not take the other down") {
  std::vector<EngineLaunch> engines;
  engines.push_back({"me", [](std::stop_token) -> EngineOutcome {
                       throw std::runtime_error("boom");
                     }});
  engines.push_back({"sat", [](std::stop_token) { return proved(5); }});
  RaceResult r = race(std::move(engines), std::nullopt);
  REQUIRE(r.winner);
  CHECK(*r.winner == 1);
  CHECK(r.outcomes[0].status == EngineOutcome::Status::kFault);
  CHECK(r.outcomes[0].message.find("boom") != std::string::npos);
}

TEST_CASE("race: sequential mode prefers the shorter proof") {
  std::vector<EngineLaunch> engines;
  engines.push_back({"me", [](std::stop_token) { return proved(8); }});
  engines.push_back({"sat", [](std::stop_token) { return proved(4); }});
  RaceResult r = race(std::move(engines), std::nullopt, true);
  REQUIRE(r.winner);
  CHECK(*r.winner == 1);

  std::vector<EngineLaunch> tie;
  tie.push_back({"me", [](std::stop_token) { return proved(4); }});
  tie.push_back({"sat", [](std::stop_token) { return proved(4); }});
  CHECK(*race(std::move(tie), std::nullopt, true).winner == 0);
}

TEST_CASE("engines alone") {
  Problem p = fixture("thm33");
  CooperationConfig cfg;
  EngineOutcome me = run_me(p, cfg, {}, std::nullopt);
  REQUIRE(me.status == EngineOutcome::Status::kProved);
  CHECK(verify_proof(me.proof).empty());
  EngineOutcome sat = run_sat(p, cfg, {}, std::nullopt);
  REQUIRE(sat.status == EngineOutcome::Status::kProved);
  CHECK(verify_proof(sat.proof).empty());

  nlohmann::json bad = sat.proof;
  bad["derivation"].back()["clause"] = "p";
  CHECK_FALSE(verify_proof(bad).empty());
  CHECK_FALSE(verify_proof(nlohmann::json::object()).empty());

  EngineOutcome none = run_me(fixture("ex21"), cfg, {}, std::nullopt);
  CHECK(none.status == EngineOutcome::Status::kExhausted);
}

TEST_CASE("pipeline on the nine clause set") {
  PipelineArtifacts art;
  Report r = run_pipeline(fixture("thm33"), small_config(), &art);
  CHECK(r.result == "unsat");
  CHECK(r.winner != "none");
  REQUIRE(r.proof);
  CHECK(verify_proof(*r.proof).empty());
  CHECK(r.counts.subgoal_candidates == art.candidates.size());
  CHECK(r.counts.transferred_subgoals == art.transferred_subgoals.size());
  CHECK(r.counts.transferred_subgoals <= 30);
  CHECK(r.wall_ms == 0.0);
}

TEST_CASE("pipeline is deterministic") {
  CooperationConfig cfg = small_config();
  for (const char* name : {"thm33", "ex41", "syllogism"}) {
    Problem p = fixture(name);
    CHECK(emit_report(run_pipeline(p, cfg), OutputFormat::kJson) ==
          emit_report(run_pipeline(p, cfg), OutputFormat::kJson));
  }
}

TEST_CASE("pipeline outcomes without a proof") {
  CooperationConfig cfg = small_config();
  Report sat = run_pipeline(fixture("ex21"), cfg);
  CHECK(sat.result == "exhausted");
  CHECK(sat.winner == "none");
  CHECK_FALSE(sat.proof);

  cfg.timeout_s = 0;
  Report t = run_pipeline(fixture("thm33"), cfg);
  CHECK(t.result == "timeout");
  CHECK_FALSE(t.proof);
}

TEST_CASE("concurrent pipeline") {
  CooperationConfig cfg = small_config();
  cfg.deterministic = false;
  Report r = run_pipeline(fixture("thm33"), cfg);
  CHECK(r.result == "unsat");
  REQUIRE(r.proof);
  CHECK(verify_proof(*r.proof).empty());

  cfg.bu_until_td = true;
  Report b = run_pipeline(fixture("syllogism"), cfg);
  CHECK(b.result == "unsat");
}
