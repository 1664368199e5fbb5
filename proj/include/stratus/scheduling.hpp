#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stratus/model.hpp"

namespace stratus {

/// Per-VM capacity grants on a space-shared host: every Active VM owns its
/// cores outright and receives cores x min(vm mips, host mips); queued VMs
/// receive nothing (they are not resident).
std::map<int, double> host_shares_space(const HostState& host);

/// Per-VM capacity grants on a time-shared host: demand_i = cores_i x
/// mips_i; if total demand exceeds host capacity every grant is scaled by
/// capacity / total demand, otherwise each VM gets its full demand.
std::map<int, double> host_shares_time(const HostState& host);

/// Dispatch on the host's vm_policy.
std::map<int, double> host_shares(const HostState& host);

/// Brings a VM forward to `now`: integrates progress at the rates in effect
/// since the last boundary, completes tasks at their exact analytic finish
/// instants (never at `now` when the update overshoots), and replays
/// promotions and rate changes from those instants so cascaded starts are
/// exact. Finished tasks are appended to `finished`.
void advance_vm(VmState& vm, SimTime now, std::vector<TaskUnit>& finished);

/// Recomputes task rates and projected finishes for the Active VM at a
/// boundary. Space-shared: strict-FIFO promotion of waiting tasks into free
/// core slots, each running task at (granted / vm cores) x cores_required.
/// Time-shared: all submitted tasks run, each at min(vm mips x
/// cores_required, granted / N). Tasks keep their stored projected finish
/// when their rate did not change.
void reassign_tasks(VmState& vm, SimTime now);

/// advance_vm + grant change + reassignment, returning the VM's next
/// projected finish. `granted` must be >= 0 and must equal 0 for non-Active
/// VMs. Preconditions: vm.task_policy matches the variant called.
std::optional<SimTime> task_update_space(VmState& vm, SimTime now, double granted,
                                         std::vector<TaskUnit>& finished);
std::optional<SimTime> task_update_time(VmState& vm, SimTime now, double granted,
                                        std::vector<TaskUnit>& finished);

/// Policy-dispatching form of the above.
std::optional<SimTime> task_update(VmState& vm, SimTime now, double granted,
                                   std::vector<TaskUnit>& finished);

struct FinishedTask {
    int vm_id = 0;
    int host_id = -1;
    TaskUnit task;
};

/// Updates every resident VM of the host to `now` under freshly computed
/// shares and returns the earliest projected finish across them, if any.
std::optional<SimTime> update_vms_processing(HostState& host, SimTime now,
                                             std::vector<FinishedTask>& finished);

/// Earliest projected finish among the VM's running tasks.
std::optional<SimTime> next_finish(const VmState& vm);

/// Files a freshly arrived task into the VM's waiting list and marks the VM
/// for reassignment. The VM must already be advanced to `now`.
void submit_task_to_vm(VmState& vm, TaskUnit task, SimTime now);

/// Throws ContractViolation when granted capacities or task rates exceed
/// their bounds (1e-9 slack). Test hook; cheap enough to call anywhere.
void check_rate_invariants(const HostState& host);

}  // namespace stratus
