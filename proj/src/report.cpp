#include "gromolab/report.hpp"

#include "gromolab/common.hpp"

namespace gromolab {

BoundReport BoundReport::ge(std::string name, double lhs, double rhs, std::string anchor,
                            double tol, bool strict) {
    BoundReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.direction = BoundDirection::GreaterEq;
    r.strict = strict;
    r.holds = strict ? (lhs > rhs) : (lhs >= rhs - tol);
    r.anchor = std::move(anchor);
    return r;
}

BoundReport BoundReport::le(std::string name, double lhs, double rhs, std::string anchor,
                            double tol, bool strict) {
    BoundReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.direction = BoundDirection::LessEq;
    r.strict = strict;
    r.holds = strict ? (lhs < rhs) : (lhs <= rhs + tol);
    r.anchor = std::move(anchor);
    return r;
}

BoundReport& BoundReport::with_input(const std::string& key, double value) {
    inputs.emplace_back(key, value);
    return *this;
}

BoundReport& BoundReport::vacuous() {
    guard_met = false;
    holds = true;
    return *this;
}

nlohmann::ordered_json BoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["lhs"] = round_sig12(lhs);
    j["rhs"] = round_sig12(rhs);
    j["direction"] = direction == BoundDirection::GreaterEq ? "ge" : "le";
    j["strict"] = strict;
    j["holds"] = holds;
    j["guard_met"] = guard_met;
    j["anchor"] = anchor;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [k, v] : inputs) in[k] = round_sig12(v);
    j["inputs"] = in;
    return j;
}

}  // namespace gromolab
