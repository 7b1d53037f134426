#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gromolab {

enum class BoundDirection { GreaterEq, LessEq };

/// Outcome of one named inequality check: lhs against rhs in a declared
/// direction, with the strictness the statement uses. guard_met == false
/// means the statement's hypothesis failed, so the check holds vacuously.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    BoundDirection direction = BoundDirection::GreaterEq;
    bool strict = false;
    bool holds = false;
    bool guard_met = true;
    std::string anchor;
    std::vector<std::pair<std::string, double>> inputs;

    // lhs >= rhs (within tol when non-strict)
    static BoundReport ge(std::string name, double lhs, double rhs, std::string anchor,
                          double tol = 1e-12, bool strict = false);
    // lhs <= rhs (within tol when non-strict)
    static BoundReport le(std::string name, double lhs, double rhs, std::string anchor,
                          double tol = 1e-12, bool strict = false);

    BoundReport& with_input(const std::string& key, double value);
    BoundReport& vacuous();  // marks guard_met = false, holds = true

    nlohmann::ordered_json to_json() const;
};

}  // namespace gromolab
