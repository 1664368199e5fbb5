#include "stratus/presets.hpp"

#include <string>

#include "stratus/errors.hpp"

namespace stratus {

Scenario canonical_scenario(char variant) {
    if (variant < 'a' || variant > 'd')
        throw ValidationError(std::string("unknown variant '") + variant +
                              "', expected a, b, c or d");
    bool host_space = variant == 'a' || variant == 'b';
    bool task_space = variant == 'a' || variant == 'c';

    Scenario s;
    s.description = std::string("two dual-core VMs on one dual-core host, variant ") + variant;

    DatacenterCharacteristics dc;
    dc.dc_id = 0;
    HostSpec host;
    host.host_id = 0;
    host.cores = 2;
    host.mips_per_core = 1000.0;
    host.ram_mb = 4096;
    host.storage_mb = 1'000'000;
    host.vm_policy = host_space ? SharePolicy::SpaceShared : SharePolicy::TimeShared;
    dc.hosts.push_back(host);
    s.datacenters.push_back(dc);

    for (int vm_id : {1, 2}) {
        VmSpec vm;
        vm.vm_id = vm_id;
        vm.cores = 2;
        vm.mips_per_core = 1000.0;
        vm.ram_mb = 1024;
        vm.storage_mb = 10'240;
        vm.task_policy = task_space ? SharePolicy::SpaceShared : SharePolicy::TimeShared;
        s.broker_plan.vm_requests.push_back(vm);
    }

    TaskGroup group;
    group.submit_time = 0.0;
    for (int task_id = 1; task_id <= 8; ++task_id) {
        TaskUnit task;
        task.task_id = task_id;
        task.length_mi = 1000.0;
        group.tasks.push_back(task);
        group.binding[task_id] = task_id <= 4 ? 1 : 2;
    }
    s.broker_plan.task_groups.push_back(std::move(group));
    s.broker_plan.destroy_on_completion = true;
    return s;
}

Scenario workload_scenario(SharePolicy task_policy, double cpu_price) {
    Scenario s;
    s.description = std::string("10000-host staggered workload, ") +
                    std::string(to_string(task_policy)) + " tasks";

    DatacenterCharacteristics dc;
    dc.dc_id = 0;
    dc.cost_per_cpu_sec = cpu_price;
    HostSpec host;
    host.cores = 1;
    host.mips_per_core = 1000.0;
    host.ram_mb = 1024;
    host.storage_mb = 2'000'000;
    host.vm_policy = SharePolicy::SpaceShared;
    dc.hosts.reserve(10'000);
    for (int h = 0; h < 10'000; ++h) {
        host.host_id = h;
        dc.hosts.push_back(host);
    }
    s.datacenters.push_back(std::move(dc));

    for (int v = 0; v < 50; ++v) {
        VmSpec vm;
        vm.vm_id = v;
        vm.cores = 1;
        vm.mips_per_core = 1000.0;
        vm.ram_mb = 512;
        vm.storage_mb = 1'024;
        vm.task_policy = task_policy;
        s.broker_plan.vm_requests.push_back(vm);
    }

    for (int g = 0; g < 10; ++g) {
        TaskGroup group;
        group.submit_time = 600.0 * g;
        for (int j = 0; j < 50; ++j) {
            TaskUnit task;
            task.task_id = 50 * g + j;
            task.length_mi = 1'200'000.0;
            task.bytes_in = 300'000;
            task.bytes_out = 300'000;
            group.tasks.push_back(task);
        }
        s.broker_plan.task_groups.push_back(std::move(group));
    }
    s.broker_plan.destroy_on_completion = true;
    return s;
}

}  // namespace stratus
