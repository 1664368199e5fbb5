#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stratus/model.hpp"

namespace stratus {

/// A complete simulation input: providers plus one broker plan. Host
/// templates are already expanded; ids are dense and validated.
struct Scenario {
    std::string description;
    std::optional<std::uint64_t> seed;  // reserved; the model is deterministic
    std::vector<DatacenterCharacteristics> datacenters;
    BrokerPlan broker_plan;

    bool operator==(const Scenario&) const = default;
};

/// Parses and fully validates a scenario document. Host/vm/task templates
/// ("count" entries) are expanded and missing ids assigned in declaration
/// order. Throws ValidationError naming the offending path and constraint.
Scenario parse_scenario(const std::string& json_text);

/// parse_scenario over a file's contents. File access problems are reported
/// as ValidationError too: a missing input is an input problem.
Scenario load_scenario_file(const std::string& path);

/// Canonical emitter: expanded entries, explicit ids, stable key order.
/// parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& scenario);

/// Structural checks shared by parse_scenario and in-memory construction.
void validate_scenario(const Scenario& scenario);

}  // namespace stratus
