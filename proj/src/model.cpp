#include "stratus/model.hpp"

#include "stratus/errors.hpp"

namespace stratus {

std::string_view to_string(SharePolicy policy) {
    switch (policy) {
        case SharePolicy::SpaceShared: return "space_shared";
        case SharePolicy::TimeShared: return "time_shared";
    }
    return "?";
}

std::optional<SharePolicy> parse_share_policy(std::string_view text) {
    if (text == "space_shared") return SharePolicy::SpaceShared;
    if (text == "time_shared") return SharePolicy::TimeShared;
    return std::nullopt;
}

VmState* HostState::find_resident(int vm_id) {
    for (VmState& vm : resident_vms)
        if (vm.spec.vm_id == vm_id) return &vm;
    return nullptr;
}

const VmState* HostState::find_resident(int vm_id) const {
    for (const VmState& vm : resident_vms)
        if (vm.spec.vm_id == vm_id) return &vm;
    return nullptr;
}

VmState* HostState::find_pending(int vm_id) {
    for (VmState& vm : pending_vms)
        if (vm.spec.vm_id == vm_id) return &vm;
    return nullptr;
}

std::map<int, int> resolve_bindings(const BrokerPlan& plan) {
    std::map<int, int> bound;
    for (const TaskGroup& group : plan.task_groups) {
        for (std::size_t i = 0; i < group.tasks.size(); ++i) {
            int task_id = group.tasks[i].task_id;
            auto explicit_it = group.binding.find(task_id);
            if (explicit_it != group.binding.end()) {
                bound[task_id] = explicit_it->second;
                continue;
            }
            if (plan.vm_requests.empty())
                throw ContractViolation("task " + std::to_string(task_id) +
                                        " has no VM to bind to");
            bound[task_id] = plan.vm_requests[i % plan.vm_requests.size()].vm_id;
        }
    }
    return bound;
}

}  // namespace stratus
