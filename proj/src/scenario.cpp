#include "stratus/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stratus/errors.hpp"

namespace stratus {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::int64_t kMaxCount = 10'000'000;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

std::string at(const std::string& path, const char* key) { return path + "." + key; }

std::string idx(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "must be an object");
}

void require_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "must be an array");
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* candidate : allowed)
            if (key == candidate) {
                known = true;
                break;
            }
        if (!known) fail(at(path, key.c_str()), "unknown key");
    }
}

std::int64_t get_integer(const json& obj, const std::string& path, const char* key,
                         std::optional<std::int64_t> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        fail(at(path, key), "required integer is missing");
    }
    const json& j = obj.at(key);
    if (!j.is_number_integer() && !j.is_number_unsigned())
        fail(at(path, key), "must be an integer");
    if (j.is_number_unsigned() &&
        j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        fail(at(path, key), "integer out of range");
    return j.get<std::int64_t>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            std::optional<std::int64_t> fallback = std::nullopt) {
    std::int64_t v = get_integer(obj, path, key, fallback);
    if (v < INT32_MIN || v > INT32_MAX) fail(at(path, key), "integer out of range");
    return static_cast<int>(v);
}

double get_double(const json& obj, const std::string& path, const char* key,
                  std::optional<double> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        fail(at(path, key), "required number is missing");
    }
    const json& j = obj.at(key);
    if (!j.is_number()) fail(at(path, key), "must be a number");
    return j.get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& j = obj.at(key);
    if (!j.is_boolean()) fail(at(path, key), "must be a boolean");
    return j.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       std::optional<std::string> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        fail(at(path, key), "required string is missing");
    }
    const json& j = obj.at(key);
    if (!j.is_string()) fail(at(path, key), "must be a string");
    return j.get<std::string>();
}

SharePolicy get_policy(const json& obj, const std::string& path, const char* key) {
    std::string text = get_string(obj, path, key);
    auto policy = parse_share_policy(text);
    if (!policy) fail(at(path, key), "must be \"space_shared\" or \"time_shared\"");
    return *policy;
}

std::int64_t get_count(const json& obj, const std::string& path) {
    std::int64_t count = get_integer(obj, path, "count", 1);
    if (count < 1 || count > kMaxCount) fail(at(path, "count"), "must be in [1, 10000000]");
    return count;
}

/// Explicit ids are honored for single entries and set the sequence point;
/// templated entries continue from there.
int explicit_or_next(const json& obj, const std::string& path, const char* key,
                     std::int64_t count, int next) {
    if (!obj.contains(key)) return next;
    if (count != 1) fail(at(path, key), "explicit id not allowed on a templated entry");
    return get_int(obj, path, key);
}

std::vector<HostSpec> parse_hosts(const json& j, const std::string& path) {
    require_array(j, path);
    std::vector<HostSpec> hosts;
    int next_id = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& entry = j[i];
        std::string epath = idx(path, i);
        require_object(entry, epath);
        check_keys(entry, epath,
                   {"count", "host_id", "cores", "mips_per_core", "ram_mb", "storage_mb",
                    "vm_policy"});
        std::int64_t count = get_count(entry, epath);
        int id = explicit_or_next(entry, epath, "host_id", count, next_id);
        if (id != next_id) fail(at(epath, "host_id"), "host ids must be dense and in order");
        HostSpec spec;
        spec.cores = get_int(entry, epath, "cores");
        spec.mips_per_core = get_double(entry, epath, "mips_per_core");
        spec.ram_mb = get_integer(entry, epath, "ram_mb");
        spec.storage_mb = get_integer(entry, epath, "storage_mb");
        spec.vm_policy = get_policy(entry, epath, "vm_policy");
        for (std::int64_t k = 0; k < count; ++k) {
            spec.host_id = next_id++;
            hosts.push_back(spec);
        }
    }
    return hosts;
}

DatacenterCharacteristics parse_datacenter(const json& j, const std::string& path,
                                           int position) {
    require_object(j, path);
    check_keys(j, path,
               {"dc_id", "hosts", "cost_per_cpu_sec", "cost_per_ram_mb",
                "cost_per_storage_mb", "cost_per_byte", "msg_latency_sec"});
    DatacenterCharacteristics dc;
    dc.dc_id = get_int(j, path, "dc_id", position);
    if (!j.contains("hosts")) fail(at(path, "hosts"), "required array is missing");
    dc.hosts = parse_hosts(j.at("hosts"), at(path, "hosts"));
    dc.cost_per_cpu_sec = get_double(j, path, "cost_per_cpu_sec", 0.0);
    dc.cost_per_ram_mb = get_double(j, path, "cost_per_ram_mb", 0.0);
    dc.cost_per_storage_mb = get_double(j, path, "cost_per_storage_mb", 0.0);
    dc.cost_per_byte = get_double(j, path, "cost_per_byte", 0.0);
    dc.msg_latency_sec = get_double(j, path, "msg_latency_sec", 0.0);
    return dc;
}

std::vector<VmSpec> parse_vm_requests(const json& j, const std::string& path) {
    require_array(j, path);
    std::vector<VmSpec> vms;
    int next_id = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& entry = j[i];
        std::string epath = idx(path, i);
        require_object(entry, epath);
        check_keys(entry, epath,
                   {"count", "vm_id", "cores", "mips_per_core", "ram_mb", "storage_mb",
                    "task_policy"});
        std::int64_t count = get_count(entry, epath);
        next_id = explicit_or_next(entry, epath, "vm_id", count, next_id);
        VmSpec spec;
        spec.cores = get_int(entry, epath, "cores");
        spec.mips_per_core = get_double(entry, epath, "mips_per_core");
        spec.ram_mb = get_integer(entry, epath, "ram_mb");
        spec.storage_mb = get_integer(entry, epath, "storage_mb");
        spec.task_policy = get_policy(entry, epath, "task_policy");
        for (std::int64_t k = 0; k < count; ++k) {
            spec.vm_id = next_id++;
            vms.push_back(spec);
        }
    }
    return vms;
}

std::vector<TaskUnit> parse_tasks(const json& j, const std::string& path, int& next_id) {
    require_array(j, path);
    std::vector<TaskUnit> tasks;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& entry = j[i];
        std::string epath = idx(path, i);
        require_object(entry, epath);
        check_keys(entry, epath,
                   {"count", "task_id", "length_mi", "cores_required", "bytes_in",
                    "bytes_out"});
        std::int64_t count = get_count(entry, epath);
        next_id = explicit_or_next(entry, epath, "task_id", count, next_id);
        TaskUnit task;
        task.length_mi = get_double(entry, epath, "length_mi");
        task.cores_required = get_int(entry, epath, "cores_required", 1);
        task.bytes_in = get_integer(entry, epath, "bytes_in", 0);
        task.bytes_out = get_integer(entry, epath, "bytes_out", 0);
        for (std::int64_t k = 0; k < count; ++k) {
            task.task_id = next_id++;
            tasks.push_back(task);
        }
    }
    return tasks;
}

std::map<int, int> parse_binding(const json& j, const std::string& path) {
    require_object(j, path);
    std::map<int, int> binding;
    for (const auto& [key, value] : j.items()) {
        int task_id = 0;
        try {
            std::size_t consumed = 0;
            task_id = std::stoi(key, &consumed);
            if (consumed != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            fail(at(path, key.c_str()), "binding keys must be task ids");
        }
        if (!value.is_number_integer() && !value.is_number_unsigned())
            fail(at(path, key.c_str()), "binding values must be vm ids");
        binding[task_id] = value.get<int>();
    }
    return binding;
}

BrokerPlan parse_plan(const json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"vm_requests", "task_groups", "destroy_on_completion"});
    BrokerPlan plan;
    plan.destroy_on_completion = get_bool(j, path, "destroy_on_completion", true);
    if (!j.contains("vm_requests")) fail(at(path, "vm_requests"), "required array is missing");
    plan.vm_requests = parse_vm_requests(j.at("vm_requests"), at(path, "vm_requests"));
    if (!j.contains("task_groups")) fail(at(path, "task_groups"), "required array is missing");
    const json& groups = j.at("task_groups");
    require_array(groups, at(path, "task_groups"));
    int next_task_id = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::string gpath = idx(at(path, "task_groups"), g);
        const json& entry = groups[g];
        require_object(entry, gpath);
        check_keys(entry, gpath, {"submit_time", "tasks", "binding"});
        TaskGroup group;
        group.submit_time = get_double(entry, gpath, "submit_time");
        if (!entry.contains("tasks")) fail(at(gpath, "tasks"), "required array is missing");
        group.tasks = parse_tasks(entry.at("tasks"), at(gpath, "tasks"), next_task_id);
        if (entry.contains("binding"))
            group.binding = parse_binding(entry.at("binding"), at(gpath, "binding"));
        plan.task_groups.push_back(std::move(group));
    }
    return plan;
}

void check_positive(double v, const std::string& path) {
    if (!std::isfinite(v) || v <= 0.0) fail(path, "must be a positive finite number");
}

void check_non_negative(double v, const std::string& path) {
    if (!std::isfinite(v) || v < 0.0) fail(path, "must be a non-negative finite number");
}

}  // namespace

void validate_scenario(const Scenario& scenario) {
    if (scenario.datacenters.empty()) fail("datacenters", "must not be empty");
    std::set<int> dc_ids;
    for (std::size_t d = 0; d < scenario.datacenters.size(); ++d) {
        const DatacenterCharacteristics& dc = scenario.datacenters[d];
        std::string dpath = idx("datacenters", d);
        if (!dc_ids.insert(dc.dc_id).second) fail(at(dpath, "dc_id"), "duplicate dc_id");
        if (dc.hosts.empty()) fail(at(dpath, "hosts"), "must not be empty");
        for (std::size_t h = 0; h < dc.hosts.size(); ++h) {
            const HostSpec& host = dc.hosts[h];
            std::string hpath = idx(at(dpath, "hosts"), h);
            if (host.host_id != static_cast<int>(h))
                fail(at(hpath, "host_id"), "host ids must be dense and in order");
            if (host.cores < 1) fail(at(hpath, "cores"), "must be >= 1");
            check_positive(host.mips_per_core, at(hpath, "mips_per_core"));
            if (host.ram_mb < 1) fail(at(hpath, "ram_mb"), "must be >= 1");
            if (host.storage_mb < 1) fail(at(hpath, "storage_mb"), "must be >= 1");
        }
        check_non_negative(dc.cost_per_cpu_sec, at(dpath, "cost_per_cpu_sec"));
        check_non_negative(dc.cost_per_ram_mb, at(dpath, "cost_per_ram_mb"));
        check_non_negative(dc.cost_per_storage_mb, at(dpath, "cost_per_storage_mb"));
        check_non_negative(dc.cost_per_byte, at(dpath, "cost_per_byte"));
        check_non_negative(dc.msg_latency_sec, at(dpath, "msg_latency_sec"));
    }

    const BrokerPlan& plan = scenario.broker_plan;
    std::map<int, const VmSpec*> vms;
    for (std::size_t v = 0; v < plan.vm_requests.size(); ++v) {
        const VmSpec& vm = plan.vm_requests[v];
        std::string vpath = idx("broker_plan.vm_requests", v);
        if (vms.count(vm.vm_id)) fail(at(vpath, "vm_id"), "duplicate vm_id");
        vms[vm.vm_id] = &vm;
        if (vm.cores < 1) fail(at(vpath, "cores"), "must be >= 1");
        check_positive(vm.mips_per_core, at(vpath, "mips_per_core"));
        if (vm.ram_mb < 0) fail(at(vpath, "ram_mb"), "must be >= 0");
        if (vm.storage_mb < 0) fail(at(vpath, "storage_mb"), "must be >= 0");
    }

    std::set<int> task_ids;
    SimTime previous_submit = 0.0;
    for (std::size_t g = 0; g < plan.task_groups.size(); ++g) {
        const TaskGroup& group = plan.task_groups[g];
        std::string gpath = idx("broker_plan.task_groups", g);
        if (group.tasks.empty()) fail(at(gpath, "tasks"), "must not be empty");
        if (!std::isfinite(group.submit_time) || group.submit_time < 0.0)
            fail(at(gpath, "submit_time"), "must be a non-negative finite number");
        if (group.submit_time < previous_submit)
            fail(at(gpath, "submit_time"), "submit times must be non-decreasing");
        previous_submit = group.submit_time;
        std::set<int> group_tasks;
        for (std::size_t t = 0; t < group.tasks.size(); ++t) {
            const TaskUnit& task = group.tasks[t];
            std::string tpath = idx(at(gpath, "tasks"), t);
            if (!task_ids.insert(task.task_id).second)
                fail(at(tpath, "task_id"), "duplicate task_id");
            group_tasks.insert(task.task_id);
            check_positive(task.length_mi, at(tpath, "length_mi"));
            if (task.cores_required < 1) fail(at(tpath, "cores_required"), "must be >= 1");
            if (task.bytes_in < 0) fail(at(tpath, "bytes_in"), "must be >= 0");
            if (task.bytes_out < 0) fail(at(tpath, "bytes_out"), "must be >= 0");
        }
        for (const auto& [task_id, vm_id] : group.binding) {
            std::string bpath = at(gpath, "binding") + "." + std::to_string(task_id);
            if (!group_tasks.count(task_id))
                fail(bpath, "binds a task that is not in this group");
            if (!vms.count(vm_id))
                fail(bpath, "references unknown vm_id " + std::to_string(vm_id));
        }
        if (group.binding.size() < group.tasks.size() && plan.vm_requests.empty())
            fail(at(gpath, "tasks"), "round-robin binding needs at least one vm_request");
    }

    // Every task must be able to run on its VM at all.
    std::map<int, int> bindings = resolve_bindings(plan);
    for (const TaskGroup& group : plan.task_groups)
        for (const TaskUnit& task : group.tasks) {
            const VmSpec* vm = vms.at(bindings.at(task.task_id));
            if (task.cores_required > vm->cores)
                fail("broker_plan.task " + std::to_string(task.task_id),
                     "cores_required exceeds its VM's cores");
        }
}

Scenario parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("document: not valid JSON: ") + e.what());
    }
    require_object(root, "document");
    check_keys(root, "document", {"description", "seed", "datacenters", "broker_plan"});

    Scenario scenario;
    scenario.description = get_string(root, "document", "description", std::string());
    if (root.contains("seed")) {
        const json& seed = root.at("seed");
        if (!seed.is_number_integer() && !seed.is_number_unsigned())
            fail("document.seed", "must be an integer");
        scenario.seed = seed.get<std::uint64_t>();
    }
    if (!root.contains("datacenters")) fail("document.datacenters", "required array is missing");
    const json& dcs = root.at("datacenters");
    require_array(dcs, "datacenters");
    for (std::size_t d = 0; d < dcs.size(); ++d)
        scenario.datacenters.push_back(
            parse_datacenter(dcs[d], idx("datacenters", d), static_cast<int>(d)));
    if (!root.contains("broker_plan")) fail("document.broker_plan", "required object is missing");
    scenario.broker_plan = parse_plan(root.at("broker_plan"), "broker_plan");

    validate_scenario(scenario);
    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open scenario file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string emit_scenario(const Scenario& scenario) {
    ordered_json root;
    root["description"] = scenario.description;
    if (scenario.seed) root["seed"] = *scenario.seed;
    root["datacenters"] = ordered_json::array();
    for (const DatacenterCharacteristics& dc : scenario.datacenters) {
        ordered_json jdc;
        jdc["dc_id"] = dc.dc_id;
        jdc["cost_per_cpu_sec"] = dc.cost_per_cpu_sec;
        jdc["cost_per_ram_mb"] = dc.cost_per_ram_mb;
        jdc["cost_per_storage_mb"] = dc.cost_per_storage_mb;
        jdc["cost_per_byte"] = dc.cost_per_byte;
        jdc["msg_latency_sec"] = dc.msg_latency_sec;
        jdc["hosts"] = ordered_json::array();
        for (const HostSpec& host : dc.hosts) {
            ordered_json jhost;
            jhost["host_id"] = host.host_id;
            jhost["cores"] = host.cores;
            jhost["mips_per_core"] = host.mips_per_core;
            jhost["ram_mb"] = host.ram_mb;
            jhost["storage_mb"] = host.storage_mb;
            jhost["vm_policy"] = std::string(to_string(host.vm_policy));
            jdc["hosts"].push_back(std::move(jhost));
        }
        root["datacenters"].push_back(std::move(jdc));
    }
    ordered_json jplan;
    jplan["destroy_on_completion"] = scenario.broker_plan.destroy_on_completion;
    jplan["vm_requests"] = ordered_json::array();
    for (const VmSpec& vm : scenario.broker_plan.vm_requests) {
        ordered_json jvm;
        jvm["vm_id"] = vm.vm_id;
        jvm["cores"] = vm.cores;
        jvm["mips_per_core"] = vm.mips_per_core;
        jvm["ram_mb"] = vm.ram_mb;
        jvm["storage_mb"] = vm.storage_mb;
        jvm["task_policy"] = std::string(to_string(vm.task_policy));
        jplan["vm_requests"].push_back(std::move(jvm));
    }
    jplan["task_groups"] = ordered_json::array();
    for (const TaskGroup& group : scenario.broker_plan.task_groups) {
        ordered_json jgroup;
        jgroup["submit_time"] = group.submit_time;
        jgroup["tasks"] = ordered_json::array();
        for (const TaskUnit& task : group.tasks) {
            ordered_json jtask;
            jtask["task_id"] = task.task_id;
            jtask["length_mi"] = task.length_mi;
            jtask["cores_required"] = task.cores_required;
            jtask["bytes_in"] = task.bytes_in;
            jtask["bytes_out"] = task.bytes_out;
            jgroup["tasks"].push_back(std::move(jtask));
        }
        if (!group.binding.empty()) {
            ordered_json jbinding;
            for (const auto& [task_id, vm_id] : group.binding)
                jbinding[std::to_string(task_id)] = vm_id;
            jgroup["binding"] = std::move(jbinding);
        }
        jplan["task_groups"].push_back(std::move(jgroup));
    }
    root["broker_plan"] = std::move(jplan);
    return root.dump(2) + "\n";
}

}  // namespace stratus
