#pragma once

#include <map>
#include <optional>

#include "stratus/scenario.hpp"

namespace stratus::testing {

struct OracleTask {
    int vm_id = -1;
    double submit_t = 0.0;
    std::optional<double> start_t;
    std::optional<double> finish_t;
    bool success = false;
};

struct OracleResult {
    std::map<int, OracleTask> tasks;  // keyed by task_id, one entry per plan task
    double end_time = 0.0;
};

/// Brute-force reference simulator. Instead of a future-event list it marches
/// the whole model forward in fixed dt increments, rescanning every host and
/// VM to recompute shares and rates from scratch, and localizes completions
/// inside a step by linear interpolation so reactions (queue promotion, VM
/// teardown, pending activation) replay at the crossing instant. Only
/// zero-latency scenarios are supported; dt simply bounds how stale a rate
/// assignment can get between rescans.
OracleResult oracle_run(const Scenario& scenario, double dt);

}  // namespace stratus::testing
