#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gromolab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double elapsed_ms = 0.0;  // measured, kept out of the JSON for determinism
    nlohmann::ordered_json details;
};

struct AcceptanceReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;
    bool all_pass = false;

    nlohmann::ordered_json to_json() const;
};

/// Runs the full acceptance suite. The report JSON is a pure function of the
/// seed; wall-clock numbers live only in the CriterionResult fields.
AcceptanceReport run_acceptance(std::uint64_t seed);

}  // namespace gromolab
