// Machine-readable outcome of a cooperation run and its JSON and text
// renderings.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace tdbu {

struct PhaseTimes {
  double td_preprocess_ms = 0.0;
  double bu_preprocess_ms = 0.0;
  double filter_ms = 0.0;
  double race_ms = 0.0;
  friend bool operator==(const PhaseTimes&, const PhaseTimes&) = default;
};

struct RunCounts {
  std::uint64_t subgoal_candidates = 0;
  std::uint64_t transferred_subgoals = 0;
  std::uint64_t facts = 0;
  std::uint64_t lemmas = 0;
  friend bool operator==(const RunCounts&, const RunCounts&) = default;
};

struct Report {
  std::string problem;
  std::string result = "timeout";  // unsat | timeout | exhausted
  std::string winner = "none";     // me | sat | none
  double wall_ms = 0.0;
  PhaseTimes phases;
  RunCounts counts;
  std::optional<std::uint64_t> resource;
  std::optional<nlohmann::json> proof;
  friend bool operator==(const Report&, const Report&) = default;
};

enum class OutputFormat { kJson, kText };

nlohmann::json to_json(const Report& r);
// Throws nlohmann::json::exception on malformed input.
Report report_from_json(const nlohmann::json& j);
std::string emit_report(const Report& r, OutputFormat format);

}  // namespace tdbu
