#include "stratus/scheduling.hpp"

#include <algorithm>
#include <cmath>

#include "stratus/errors.hpp"

namespace stratus {
namespace {

constexpr double kSlack = 1e-9;

void require(bool ok, const char* what) {
    if (!ok) throw ContractViolation(what);
}

double space_rate(const VmState& vm, const TaskUnit& task) {
    return vm.granted_mips / static_cast<double>(vm.spec.cores) *
           static_cast<double>(task.cores_required);
}

void set_rate(ActiveTask& at, double rate, SimTime now) {
    if (at.rate_mips == rate) return;  // keep the stored finish exact
    at.rate_mips = rate;
    at.projected_finish = rate > 0.0 ? now + at.task.remaining_mi() / rate : kNoFinish;
}

void promote(VmState& vm, TaskUnit task, double rate, SimTime now) {
    ActiveTask at;
    at.task = std::move(task);
    at.task.status = TaskStatus::Running;
    if (!at.task.start_t) at.task.start_t = now;
    at.rate_mips = rate;
    at.projected_finish = rate > 0.0 ? now + at.task.remaining_mi() / rate : kNoFinish;
    vm.running.push_back(std::move(at));
}

void reassign_space(VmState& vm, SimTime now) {
    // Strict FIFO: the head waits for enough free slots; nothing overtakes it.
    while (!vm.waiting.empty() &&
           vm.used_task_cores() + vm.waiting.front().cores_required <= vm.spec.cores) {
        double rate = space_rate(vm, vm.waiting.front());
        TaskUnit task = std::move(vm.waiting.front());
        vm.waiting.erase(vm.waiting.begin());
        promote(vm, std::move(task), rate, now);
    }
    for (ActiveTask& at : vm.running) set_rate(at, space_rate(vm, at.task), now);
}

void reassign_time(VmState& vm, SimTime now) {
    // No task queue under time sharing: every submitted task runs.
    for (TaskUnit& task : vm.waiting) promote(vm, std::move(task), 0.0, now);
    vm.waiting.clear();
    if (vm.running.empty()) return;
    double share = vm.granted_mips / static_cast<double>(vm.running.size());
    for (ActiveTask& at : vm.running) {
        double cap = vm.spec.mips_per_core * static_cast<double>(at.task.cores_required);
        set_rate(at, std::min(cap, share), now);
    }
}

}  // namespace

void reassign_tasks(VmState& vm, SimTime now) {
    if (vm.status != VmStatus::Active || vm.granted_mips <= 0.0) return;
    if (vm.spec.task_policy == SharePolicy::SpaceShared)
        reassign_space(vm, now);
    else
        reassign_time(vm, now);
}

void advance_vm(VmState& vm, SimTime now, std::vector<TaskUnit>& finished) {
    require(now >= vm.last_update, "advance_vm: time moved backwards");
    if (vm.status != VmStatus::Active || vm.running.empty()) {
        vm.last_update = now;
        return;
    }
    SimTime t = vm.last_update;
    while (true) {
        SimTime f = kNoFinish;
        for (const ActiveTask& at : vm.running) f = std::min(f, at.projected_finish);
        if (!(f <= now)) break;

        // Integrate survivors to f; completers take their exact finish.
        for (ActiveTask& at : vm.running)
            if (at.projected_finish > f) at.task.progress_mi += at.rate_mips * (f - t);
        for (auto it = vm.running.begin(); it != vm.running.end();) {
            if (it->projected_finish <= f) {
                TaskUnit done = std::move(it->task);
                done.progress_mi = done.length_mi;
                done.status = TaskStatus::Finished;
                done.finish_t = f;
                finished.push_back(std::move(done));
                it = vm.running.erase(it);
            } else {
                ++it;
            }
        }
        t = f;
        // Completion freed capacity: promotions and rate changes replay
        // from this exact instant.
        reassign_tasks(vm, f);
    }
    for (ActiveTask& at : vm.running) at.task.progress_mi += at.rate_mips * (now - t);
    vm.last_update = now;
}

std::optional<SimTime> next_finish(const VmState& vm) {
    SimTime f = kNoFinish;
    for (const ActiveTask& at : vm.running) f = std::min(f, at.projected_finish);
    if (f == kNoFinish) return std::nullopt;
    return f;
}

std::optional<SimTime> task_update(VmState& vm, SimTime now, double granted,
                                   std::vector<TaskUnit>& finished) {
    require(std::isfinite(granted) && granted >= 0.0, "task_update: granted must be >= 0");
    require(vm.status == VmStatus::Active || granted == 0.0,
            "task_update: non-active VM granted capacity");
    advance_vm(vm, now, finished);
    if (granted != vm.granted_mips || vm.needs_reassign) {
        vm.granted_mips = granted;
        reassign_tasks(vm, now);
        vm.needs_reassign = false;
    }
    return next_finish(vm);
}

std::optional<SimTime> task_update_space(VmState& vm, SimTime now, double granted,
                                         std::vector<TaskUnit>& finished) {
    require(vm.spec.task_policy == SharePolicy::SpaceShared,
            "task_update_space: VM is not space-shared");
    return task_update(vm, now, granted, finished);
}

std::optional<SimTime> task_update_time(VmState& vm, SimTime now, double granted,
                                        std::vector<TaskUnit>& finished) {
    require(vm.spec.task_policy == SharePolicy::TimeShared,
            "task_update_time: VM is not time-shared");
    return task_update(vm, now, granted, finished);
}

std::map<int, double> host_shares_space(const HostState& host) {
    require(host.spec.vm_policy == SharePolicy::SpaceShared,
            "host_shares_space: host is not space-shared");
    std::map<int, double> shares;
    for (const VmState& vm : host.resident_vms) {
        // A dedicated core cannot run faster than its physical speed.
        double per_core = std::min(vm.spec.mips_per_core, host.spec.mips_per_core);
        shares[vm.spec.vm_id] = static_cast<double>(vm.spec.cores) * per_core;
    }
    return shares;
}

std::map<int, double> host_shares_time(const HostState& host) {
    require(host.spec.vm_policy == SharePolicy::TimeShared,
            "host_shares_time: host is not time-shared");
    std::map<int, double> shares;
    double total_demand = 0.0;
    for (const VmState& vm : host.resident_vms) total_demand += vm.spec.requested_mips();
    double capacity = host.spec.capacity_mips();
    double scale = total_demand > capacity ? capacity / total_demand : 1.0;
    for (const VmState& vm : host.resident_vms)
        shares[vm.spec.vm_id] = vm.spec.requested_mips() * scale;
    return shares;
}

std::map<int, double> host_shares(const HostState& host) {
    return host.spec.vm_policy == SharePolicy::SpaceShared ? host_shares_space(host)
                                                           : host_shares_time(host);
}

std::optional<SimTime> update_vms_processing(HostState& host, SimTime now,
                                             std::vector<FinishedTask>& finished) {
    std::map<int, double> shares = host_shares(host);
    SimTime min_fin = kNoFinish;
    std::vector<TaskUnit> done;
    for (VmState& vm : host.resident_vms) {
        done.clear();
        auto fin = task_update(vm, now, shares.at(vm.spec.vm_id), done);
        for (TaskUnit& task : done)
            finished.push_back(FinishedTask{vm.spec.vm_id, host.spec.host_id, std::move(task)});
        if (fin) min_fin = std::min(min_fin, *fin);
    }
    if (min_fin == kNoFinish) return std::nullopt;
    return min_fin;
}

void submit_task_to_vm(VmState& vm, TaskUnit task, SimTime now) {
    task.submit_t = now;
    task.status = TaskStatus::Queued;
    vm.waiting.push_back(std::move(task));
    vm.needs_reassign = true;
}

void check_rate_invariants(const HostState& host) {
    double total_granted = 0.0;
    for (const VmState& vm : host.resident_vms) {
        total_granted += vm.granted_mips;
        double task_rates = 0.0;
        for (const ActiveTask& at : vm.running) {
            double cap = vm.spec.mips_per_core * static_cast<double>(at.task.cores_required);
            if (at.rate_mips > cap + kSlack)
                throw ContractViolation("task rate exceeds its per-core cap");
            task_rates += at.rate_mips;
        }
        if (task_rates > vm.granted_mips + kSlack)
            throw ContractViolation("task rates exceed the VM grant");
        if (vm.spec.task_policy == SharePolicy::SpaceShared &&
            vm.used_task_cores() > vm.spec.cores)
            throw ContractViolation("running tasks exceed VM core slots");
    }
    if (total_granted > host.spec.capacity_mips() + kSlack)
        throw ContractViolation("VM grants exceed host capacity");
    if (host.used_cores() > host.spec.cores &&
        host.spec.vm_policy == SharePolicy::SpaceShared)
        throw ContractViolation("resident VMs exceed host cores");
}

}  // namespace stratus
