#include "stratus/provisioner.hpp"

#include <algorithm>

#include "stratus/errors.hpp"

namespace stratus {
namespace {

VmState make_resident(const VmSpec& vm, HostState& host) {
    host.free_ram_mb -= vm.ram_mb;
    host.free_storage_mb -= vm.storage_mb;
    VmState state;
    state.spec = vm;
    state.status = VmStatus::Active;
    state.host_id = host.spec.host_id;
    return state;
}

}  // namespace

bool fits_now(const VmSpec& vm, const HostState& host) {
    if (host.free_ram_mb < vm.ram_mb) return false;
    if (host.free_storage_mb < vm.storage_mb) return false;
    if (host.spec.vm_policy == SharePolicy::SpaceShared &&
        host.spec.cores - host.used_cores() < vm.cores)
        return false;
    return true;
}

bool could_ever_fit(const VmSpec& vm, const HostSpec& host) {
    return host.ram_mb >= vm.ram_mb && host.storage_mb >= vm.storage_mb &&
           host.cores >= vm.cores;
}

std::optional<Placement> allocate_host_fcfs(const VmSpec& vm, std::vector<HostState>& hosts) {
    for (HostState& host : hosts) {
        if (!fits_now(vm, host)) continue;
        host.resident_vms.push_back(make_resident(vm, host));
        return Placement{host.spec.host_id, false};
    }
    // Nothing admits the VM today. Time-shared hosts hold no queues, so only
    // a space-shared host that could ever fit it may park the request.
    for (HostState& host : hosts) {
        if (host.spec.vm_policy != SharePolicy::SpaceShared) continue;
        if (!could_ever_fit(vm, host.spec)) continue;
        VmState state;
        state.spec = vm;
        state.status = VmStatus::Queued;
        state.host_id = host.spec.host_id;
        host.pending_vms.push_back(std::move(state));
        return Placement{host.spec.host_id, true};
    }
    return std::nullopt;
}

DestroyOutcome destroy_vm(int vm_id, HostState& host) {
    DestroyOutcome outcome;

    auto resident = std::find_if(host.resident_vms.begin(), host.resident_vms.end(),
                                 [&](const VmState& vm) { return vm.spec.vm_id == vm_id; });
    if (resident != host.resident_vms.end()) {
        outcome.removed = std::move(*resident);
        host.resident_vms.erase(resident);
        host.free_ram_mb += outcome.removed.spec.ram_mb;
        host.free_storage_mb += outcome.removed.spec.storage_mb;
    } else {
        auto pending = std::find_if(host.pending_vms.begin(), host.pending_vms.end(),
                                    [&](const VmState& vm) { return vm.spec.vm_id == vm_id; });
        if (pending == host.pending_vms.end())
            throw UnknownVm("destroy_vm: host " + std::to_string(host.spec.host_id) +
                            " holds no VM " + std::to_string(vm_id));
        outcome.removed = std::move(*pending);
        outcome.was_pending = true;
        host.pending_vms.erase(pending);
        // A queued VM held no resources, so nothing frees up.
        outcome.removed.status = VmStatus::Destroyed;
        return outcome;
    }
    outcome.removed.status = VmStatus::Destroyed;

    // Strict FIFO: only the head may activate, repeatedly while it fits.
    while (!host.pending_vms.empty() && fits_now(host.pending_vms.front().spec, host)) {
        VmState vm = std::move(host.pending_vms.front());
        host.pending_vms.erase(host.pending_vms.begin());
        host.free_ram_mb -= vm.spec.ram_mb;
        host.free_storage_mb -= vm.spec.storage_mb;
        vm.status = VmStatus::Active;
        outcome.activated.push_back(vm.spec.vm_id);
        host.resident_vms.push_back(std::move(vm));
    }
    return outcome;
}

}  // namespace stratus
