#pragma once

#include "stratus/scenario.hpp"

namespace stratus {

/// The built-in demonstration scenario behind the `fig3` CLI verb: one
/// dual-core 1000-MIPS host, two dual-core VMs, eight 1000-MI tasks bound
/// four per VM. The variant letter selects the policy pair:
///   a = space-shared host, space-shared tasks
///   b = space-shared host, time-shared tasks
///   c = time-shared host,  space-shared tasks
///   d = time-shared host,  time-shared tasks
/// Throws ValidationError for any other letter.
Scenario canonical_scenario(char variant);

/// Large staggered workload: 10000 single-core hosts, 50 single-core VMs,
/// 500 tasks of 1.2e6 MI arriving in groups of 50 every 600 s, round-robin
/// bound. `task_policy` selects the in-VM scheduler; hosts are space-shared
/// (one VM per core) either way. All prices are zero except an optional
/// CPU price.
Scenario workload_scenario(SharePolicy task_policy, double cpu_price = 0.0);

}  // namespace stratus
