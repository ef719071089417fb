#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

// Self-contained validation suites: each criterion cross-checks one of the
// headline results against an independent oracle and reports a verdict with
// the measured gaps. Output is deterministic for a fixed seed (no wall-clock
// or environment data in the report).

namespace xx0 {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    nlohmann::ordered_json details;
};

// suite in {"tw", "oracle", "mc", "all"}; throws std::invalid_argument on
// anything else. The seed only affects the Monte Carlo criterion.
std::vector<CriterionResult> run_criteria(const std::string& suite,
                                          std::uint64_t seed);

// Full machine-readable report for the chosen suite.
nlohmann::ordered_json validation_report(const std::string& suite,
                                         std::uint64_t seed);

}  // namespace xx0
