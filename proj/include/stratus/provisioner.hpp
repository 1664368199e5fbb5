#pragma once

#include <optional>
#include <vector>

#include "stratus/model.hpp"

namespace stratus {

struct Placement {
    int host_id = -1;
    bool queued = false;  // true: parked in the host's pending queue
};

/// First-come-first-serve, first-fit VM placement.
///
/// Hosts are scanned in inventory order. A host admits the VM when free RAM
/// and storage suffice and, on a space-shared host, enough cores are free;
/// a time-shared host is always core-eligible. On admission the VM becomes
/// resident: RAM/storage ledgers are debited and the VM turns Active.
///
/// When nothing admits the VM now but some space-shared host could ever fit
/// it (spec-level capacities suffice), the VM is parked in the first such
/// host's pending queue, undebited, as Queued. Otherwise placement fails.
std::optional<Placement> allocate_host_fcfs(const VmSpec& vm, std::vector<HostState>& hosts);

struct DestroyOutcome {
    VmState removed;              // the VM as it was at teardown
    bool was_pending = false;     // removed from a pending queue, never resident
    std::vector<int> activated;   // pending VMs promoted to resident, FIFO order
};

/// Tears a VM down, crediting its host's RAM/storage ledgers and promoting
/// the head of the pending queue while it fits. Throws UnknownVm if the host
/// holds no such VM.
DestroyOutcome destroy_vm(int vm_id, HostState& host);

/// True when the host could admit the VM right now.
bool fits_now(const VmSpec& vm, const HostState& host);

/// True when the host's spec-level capacities could ever admit the VM.
bool could_ever_fit(const VmSpec& vm, const HostSpec& host);

}  // namespace stratus
