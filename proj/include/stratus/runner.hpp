#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stratus/accounting.hpp"
#include "stratus/events.hpp"
#include "stratus/scenario.hpp"

namespace stratus {

/// Everything a finished run leaves behind.
struct RunOutput {
    std::vector<CompletionRecord> records;  ///< one per planned task, sorted by task_id
    CostLedger ledger;                      ///< merged across datacenters
    std::uint64_t trace_hash = 0;
    std::vector<std::string> trace;         ///< populated only when keep_trace
    SimTime end_time = 0.0;
    bool hosts_restored = false;            ///< all hosts back at spec capacity
    std::array<std::uint64_t, kEventTagCount> event_counts{};
};

/// Builds the engine and entities for a validated scenario, runs the event
/// queue dry, and collects records, ledger and trace digest. A scenario no
/// datacenter can serve throws NoSuitableProvider; identical scenarios
/// produce identical outputs, including the trace hash.
RunOutput run_scenario(const Scenario& scenario, bool keep_trace = false);

}  // namespace stratus
