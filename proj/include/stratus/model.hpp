#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stratus {

/// Simulation time in seconds.
using SimTime = double;

constexpr SimTime kNoFinish = std::numeric_limits<SimTime>::infinity();

/// How a resource is divided among its consumers: dedicated slices
/// (space-shared) or a proportional fluid share (time-shared).
enum class SharePolicy { SpaceShared, TimeShared };

std::string_view to_string(SharePolicy policy);
std::optional<SharePolicy> parse_share_policy(std::string_view text);

struct HostSpec {
    int host_id = 0;
    int cores = 1;
    double mips_per_core = 0.0;
    std::int64_t ram_mb = 0;
    std::int64_t storage_mb = 0;
    SharePolicy vm_policy = SharePolicy::SpaceShared;

    double capacity_mips() const { return static_cast<double>(cores) * mips_per_core; }

    bool operator==(const HostSpec&) const = default;
};

struct VmSpec {
    int vm_id = 0;
    int cores = 1;
    double mips_per_core = 0.0;
    std::int64_t ram_mb = 0;
    std::int64_t storage_mb = 0;
    SharePolicy task_policy = SharePolicy::SpaceShared;

    /// Aggregate capacity the VM asks for.
    double requested_mips() const { return static_cast<double>(cores) * mips_per_core; }

    bool operator==(const VmSpec&) const = default;
};

enum class TaskStatus { Created, Submitted, Queued, Running, Finished };

/// One unit of work: a fixed instruction count executed on some VM cores.
struct TaskUnit {
    int task_id = 0;
    double length_mi = 0.0;
    int cores_required = 1;
    std::int64_t bytes_in = 0;
    std::int64_t bytes_out = 0;

    TaskStatus status = TaskStatus::Created;
    double progress_mi = 0.0;
    std::optional<SimTime> submit_t;
    std::optional<SimTime> start_t;
    std::optional<SimTime> finish_t;

    double remaining_mi() const { return length_mi - progress_mi; }

    bool operator==(const TaskUnit&) const = default;
};

enum class VmStatus { Requested, Active, Queued, Destroyed };

/// A task currently holding capacity inside a VM. rate_mips and
/// projected_finish are valid between consecutive update boundaries.
struct ActiveTask {
    TaskUnit task;
    double rate_mips = 0.0;
    SimTime projected_finish = kNoFinish;
};

struct VmState {
    VmSpec spec;
    VmStatus status = VmStatus::Requested;
    std::optional<int> host_id;
    double granted_mips = 0.0;
    std::vector<ActiveTask> running;
    std::vector<TaskUnit> waiting;  // FIFO, front at index 0

    SimTime last_update = 0.0;
    bool needs_reassign = false;

    /// Core slots taken by running tasks (space-shared accounting).
    int used_task_cores() const {
        int used = 0;
        for (const ActiveTask& at : running) used += at.task.cores_required;
        return used;
    }
};

struct HostState {
    HostSpec spec;
    std::int64_t free_ram_mb = 0;
    std::int64_t free_storage_mb = 0;
    std::vector<VmState> resident_vms;
    std::vector<VmState> pending_vms;  // FIFO, space-shared hosts only

    explicit HostState(HostSpec s)
        : spec(s), free_ram_mb(s.ram_mb), free_storage_mb(s.storage_mb) {}

    /// Cores claimed by resident VMs. Meaningful for space-shared hosts,
    /// where residency implies dedicated cores.
    int used_cores() const {
        int used = 0;
        for (const VmState& vm : resident_vms) used += vm.spec.cores;
        return used;
    }

    VmState* find_resident(int vm_id);
    const VmState* find_resident(int vm_id) const;
    VmState* find_pending(int vm_id);
};

struct DatacenterCharacteristics {
    int dc_id = 0;
    std::vector<HostSpec> hosts;
    double cost_per_cpu_sec = 0.0;
    double cost_per_ram_mb = 0.0;
    double cost_per_storage_mb = 0.0;
    double cost_per_byte = 0.0;
    double msg_latency_sec = 0.0;

    bool operator==(const DatacenterCharacteristics&) const = default;
};

/// Tasks released together at one submission time. An empty binding means
/// round-robin over the plan's vm_requests, restarting at the first VM for
/// each group; explicit entries map task_id -> vm_id.
struct TaskGroup {
    SimTime submit_time = 0.0;
    std::vector<TaskUnit> tasks;
    std::map<int, int> binding;

    bool operator==(const TaskGroup&) const = default;
};

struct BrokerPlan {
    std::vector<VmSpec> vm_requests;
    std::vector<TaskGroup> task_groups;
    bool destroy_on_completion = true;

    bool operator==(const BrokerPlan&) const = default;
};

/// Fully resolves which VM every task lands on (task_id -> vm_id).
std::map<int, int> resolve_bindings(const BrokerPlan& plan);

/// Final accounting for one task, reported back to the submitter.
struct CompletionRecord {
    int task_id = 0;
    int vm_id = 0;
    int host_id = -1;
    int dc_id = -1;
    SimTime submit_t = 0.0;
    std::optional<SimTime> start_t;
    std::optional<SimTime> finish_t;
    double cpu_seconds = 0.0;
    double cost = 0.0;
    bool success = false;
};

}  // namespace stratus
