// The cooperation pipeline: both preprocessings, the transfer filters, the
// augmented inputs and the race of the two engines.

#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "tdbu/lemma_select.hpp"
#include "tdbu/report.hpp"
#include "tdbu/saturation.hpp"
#include "tdbu/subgoal_select.hpp"
#include "tdbu/tableau.hpp"

namespace tdbu {

struct CooperationConfig {
  StartMode mode = StartMode::kNegative;
  int variant = 2;
  SelectionWeights weights;
  LemmaQuotas quotas;
  // Activations of the saturation preprocessing.
  std::uint64_t activations = 2000;
  // Preprocessing saturates until subgoal generation finishes instead of
  // for exactly `activations` steps. Ignored in deterministic mode.
  bool bu_until_td = false;

  Bound bound;
  std::uint32_t initial_resource = 1;
  std::uint32_t step = 1;
  std::uint32_t max_resource = 64;

  OrderingMode ordering = OrderingMode::kPrecedence;
  std::uint32_t fifo_period = 5;

  double timeout_s = 300.0;
  bool deterministic = false;

  // Safety limits; 0 means unlimited.
  std::uint64_t td_max_steps = 500'000;
  std::uint64_t me_max_inferences = 0;
  std::uint64_t sat_max_generated = 0;
  std::uint64_t sat_max_activations = 0;
};

struct EngineOutcome {
  enum class Status : std::uint8_t { kProved, kExhausted, kLimit, kFault };
  Status status = Status::kLimit;
  // Inference steps of the proof.
  std::uint64_t inferences = 0;
  // Final resource (tableau) or activations (saturation).
  std::uint64_t resource = 0;
  nlohmann::json proof;
  std::string message;
};

std::string_view status_name(EngineOutcome::Status s);

using EngineTask = std::function<EngineOutcome(std::stop_token)>;

struct EngineLaunch {
  std::string name;
  EngineTask task;
};

struct RaceResult {
  std::optional<std::size_t> winner;
  std::vector<EngineOutcome> outcomes;
  std::vector<std::string> log;
};

// Runs the engines concurrently; the first proof stops the others. In
// sequential mode the engines run one after the other and the proof with
// fewer inferences wins, ties to the earlier engine.
RaceResult race(std::vector<EngineLaunch> engines,
                std::optional<std::chrono::steady_clock::time_point> deadline,
                bool sequential = false);

// Connection tableau engine on `p` as given.
EngineOutcome run_me(const Problem& p, const CooperationConfig& cfg, std::stop_token stop,
                     std::optional<std::chrono::steady_clock::time_point> deadline);
// Saturation engine on `p`.
EngineOutcome run_sat(const Problem& p, const CooperationConfig& cfg, std::stop_token stop,
                      std::optional<std::chrono::steady_clock::time_point> deadline);

SaturationConfig saturation_config(const Problem& p, const CooperationConfig& cfg);

nlohmann::json tableau_proof_json(const TableauProof& proof, const Problem& p);
nlohmann::json refutation_json(const Refutation& r);

// Checks a proof object: tableau proofs are replayed over their clause
// texts, saturation derivations are checked step by step. Returns an empty
// string on success, else the first failure.
std::string verify_proof(const nlohmann::json& proof);

struct PipelineArtifacts {
  std::vector<SubgoalClauseRecord> candidates;
  std::vector<Clause> transferred_subgoals;
  std::vector<LemmaCandidate> facts;
  std::vector<SelectedLemma> lemmas;
  RaceResult race;
};

Report run_pipeline(const Problem& p, const CooperationConfig& cfg,
                    PipelineArtifacts* artifacts = nullptr);

}  // namespace tdbu
