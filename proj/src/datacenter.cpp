#include "stratus/datacenter.hpp"

#include <algorithm>

#include "stratus/errors.hpp"
#include "stratus/provisioner.hpp"

namespace stratus {

Datacenter::Datacenter(DatacenterCharacteristics characteristics)
    : characteristics_(std::move(characteristics)),
      name_("dc" + std::to_string(characteristics_.dc_id)) {
    hosts_.reserve(characteristics_.hosts.size());
    for (std::size_t i = 0; i < characteristics_.hosts.size(); ++i) {
        const HostSpec& spec = characteristics_.hosts[i];
        if (spec.host_id != static_cast<int>(i))
            throw ContractViolation("host ids must be dense and in order");
        hosts_.emplace_back(spec);
    }
}

RegisterDatacenterMsg Datacenter::registration() const {
    RegisterDatacenterMsg msg;
    msg.dc_id = characteristics_.dc_id;
    msg.msg_latency_sec = characteristics_.msg_latency_sec;
    for (const HostSpec& spec : characteristics_.hosts) {
        HostShape shape{spec.cores, spec.mips_per_core, spec.ram_mb, spec.storage_mb};
        if (std::find(msg.host_shapes.begin(), msg.host_shapes.end(), shape) ==
            msg.host_shapes.end())
            msg.host_shapes.push_back(shape);
    }
    return msg;
}

bool Datacenter::hosts_restored() const {
    for (const HostState& host : hosts_) {
        if (!host.resident_vms.empty() || !host.pending_vms.empty()) return false;
        if (host.free_ram_mb != host.spec.ram_mb) return false;
        if (host.free_storage_mb != host.spec.storage_mb) return false;
    }
    return true;
}

void Datacenter::on_event(Engine& engine, const Event& event) {
    self_ = event.target;
    switch (event.tag) {
        case EventTag::CreateVm: return handle_create_vm(engine, event);
        case EventTag::SubmitTask: return handle_submit_task(engine, event);
        case EventTag::DestroyVm: return handle_destroy_vm(engine, event);
        case EventTag::InternalUpdate: return handle_internal_update(engine, event);
        default:
            throw ContractViolation(name_ + " received unexpected " +
                                    std::string(to_string(event.tag)));
    }
}

void Datacenter::advance_all(SimTime now, std::vector<FinishedTask>& finished) {
    std::vector<TaskUnit> done;
    for (HostState& host : hosts_) {
        if (host.resident_vms.empty()) continue;
        for (VmState& vm : host.resident_vms) {
            done.clear();
            advance_vm(vm, now, done);
            for (TaskUnit& task : done)
                finished.push_back(
                    FinishedTask{vm.spec.vm_id, host.spec.host_id, std::move(task)});
        }
    }
}

void Datacenter::settle(Engine& engine, SimTime now, std::vector<FinishedTask>& finished) {
    SimTime min_fin = kNoFinish;
    for (HostState& host : hosts_) {
        if (host.resident_vms.empty()) continue;
        auto fin = update_vms_processing(host, now, finished);
        if (fin) min_fin = std::min(min_fin, *fin);
    }
    for (const FinishedTask& done : finished) emit_task_done(engine, done);
    finished.clear();
    if (min_fin != kNoFinish) {
        Event wakeup;
        wakeup.fire_at = min_fin;  // absolute, so it lands exactly on the finish
        wakeup.source = self_;
        wakeup.target = self_;
        wakeup.tag = EventTag::InternalUpdate;
        wakeup.payload = InternalUpdateMsg{++update_revision_};
        engine.schedule(std::move(wakeup));
    }
}

void Datacenter::emit_task_done(Engine& engine, const FinishedTask& done) {
    const TaskUnit& task = done.task;
    CompletionRecord record;
    record.task_id = task.task_id;
    record.vm_id = done.vm_id;
    record.host_id = done.host_id;
    record.dc_id = characteristics_.dc_id;
    record.submit_t = task.submit_t.value_or(0.0);
    record.start_t = task.start_t;
    record.finish_t = task.finish_t;
    record.cpu_seconds = *task.finish_t - *task.start_t;
    record.success = true;

    double processing = task_processing_cost(record.cpu_seconds, characteristics_);
    double out_transfer = transfer_cost(task.bytes_out, characteristics_);
    ledger_.add_processing(characteristics_.dc_id, done.vm_id, processing);
    ledger_.add_transfer(characteristics_.dc_id, done.vm_id, out_transfer);
    record.cost = task_accrued_[task.task_id] + processing + out_transfer;
    task_accrued_.erase(task.task_id);

    auto submitter = task_submitter_.find(task.task_id);
    if (submitter == task_submitter_.end())
        throw ContractViolation("finished task " + std::to_string(task.task_id) +
                                " has no submitter on file");
    engine.send(self_, submitter->second, characteristics_.msg_latency_sec, EventTag::TaskDone,
                TaskDoneMsg{std::move(record)});
    task_submitter_.erase(submitter);
}

void Datacenter::emit_task_failure(Engine& engine, SimTime now, const TaskUnit& task,
                                   int vm_id, int host_id, EntityId fallback_submitter) {
    EntityId submitter = fallback_submitter;
    auto filed = task_submitter_.find(task.task_id);
    if (filed != task_submitter_.end()) submitter = filed->second;
    CompletionRecord record;
    record.task_id = task.task_id;
    record.vm_id = vm_id;
    record.host_id = host_id;
    record.dc_id = characteristics_.dc_id;
    record.submit_t = task.submit_t.value_or(now);
    record.start_t = task.start_t;
    record.cpu_seconds = 0.0;
    record.cost = 0.0;
    record.success = false;
    auto accrued = task_accrued_.find(task.task_id);
    if (accrued != task_accrued_.end()) {
        record.cost = accrued->second;
        task_accrued_.erase(accrued);
    }
    task_submitter_.erase(task.task_id);
    engine.send(self_, submitter, characteristics_.msg_latency_sec, EventTag::TaskDone,
                TaskDoneMsg{std::move(record)});
}

void Datacenter::charge_activation(int vm_id) {
    HostState* host = nullptr;
    VmState* vm = locate_vm(vm_id, &host);
    if (vm == nullptr)
        throw ContractViolation("activated VM " + std::to_string(vm_id) + " not found");
    ledger_.add_creation(characteristics_.dc_id, vm_id,
                         vm_creation_cost(vm->spec, characteristics_));
}

VmState* Datacenter::locate_vm(int vm_id, HostState** host_out) {
    auto it = vm_host_.find(vm_id);
    if (it == vm_host_.end()) return nullptr;
    HostState& host = hosts_[static_cast<std::size_t>(it->second)];
    if (host_out) *host_out = &host;
    VmState* vm = host.find_resident(vm_id);
    if (vm) return vm;
    return host.find_pending(vm_id);
}

void Datacenter::handle_create_vm(Engine& engine, const Event& event) {
    const auto& msg = std::get<CreateVmMsg>(event.payload);
    SimTime now = engine.now();
    std::vector<FinishedTask> finished;
    advance_all(now, finished);

    if (vm_host_.count(msg.vm.vm_id) || destroyed_vms_.count(msg.vm.vm_id))
        throw ContractViolation("vm id " + std::to_string(msg.vm.vm_id) + " already used");

    VmAckMsg ack;
    ack.vm_id = msg.vm.vm_id;
    auto placement = allocate_host_fcfs(msg.vm, hosts_);
    if (placement) {
        ack.success = true;
        ack.host_id = placement->host_id;
        vm_host_[msg.vm.vm_id] = placement->host_id;
        if (!placement->queued) charge_activation(msg.vm.vm_id);
    }
    engine.send(self_, event.source, characteristics_.msg_latency_sec, EventTag::VmAck, ack);
    settle(engine, now, finished);
}

void Datacenter::handle_submit_task(Engine& engine, const Event& event) {
    const auto& msg = std::get<SubmitTaskMsg>(event.payload);
    SimTime now = engine.now();
    std::vector<FinishedTask> finished;
    advance_all(now, finished);

    HostState* host = nullptr;
    VmState* vm = locate_vm(msg.vm_id, &host);
    if (vm == nullptr) {
        // Unknown or already-destroyed VM: a recoverable protocol error.
        TaskUnit task = msg.task;
        task.submit_t = now;
        emit_task_failure(engine, now, task, msg.vm_id, -1, event.source);
        settle(engine, now, finished);
        return;
    }
    if (task_submitter_.count(msg.task.task_id))
        throw ContractViolation("task id " + std::to_string(msg.task.task_id) +
                                " already in flight");
    task_submitter_[msg.task.task_id] = event.source;
    double in_transfer = transfer_cost(msg.task.bytes_in, characteristics_);
    ledger_.add_transfer(characteristics_.dc_id, msg.vm_id, in_transfer);
    task_accrued_[msg.task.task_id] = in_transfer;
    submit_task_to_vm(*vm, msg.task, now);
    settle(engine, now, finished);
}

void Datacenter::handle_destroy_vm(Engine& engine, const Event& event) {
    const auto& msg = std::get<DestroyVmMsg>(event.payload);
    SimTime now = engine.now();
    std::vector<FinishedTask> finished;
    advance_all(now, finished);

    auto located = vm_host_.find(msg.vm_id);
    if (located == vm_host_.end())
        throw UnknownVm(name_ + ": destroy of unknown VM " + std::to_string(msg.vm_id));
    HostState& host = hosts_[static_cast<std::size_t>(located->second)];

    DestroyOutcome outcome = destroy_vm(msg.vm_id, host);
    vm_host_.erase(located);
    destroyed_vms_.insert(msg.vm_id);

    // Tasks the VM still held resolve as failures.
    for (const ActiveTask& at : outcome.removed.running)
        emit_task_failure(engine, now, at.task, msg.vm_id, host.spec.host_id, event.source);
    for (const TaskUnit& task : outcome.removed.waiting)
        emit_task_failure(engine, now, task, msg.vm_id, host.spec.host_id, event.source);

    for (int activated : outcome.activated) charge_activation(activated);
    settle(engine, now, finished);
}

void Datacenter::handle_internal_update(Engine& engine, const Event& event) {
    const auto& msg = std::get<InternalUpdateMsg>(event.payload);
    if (msg.revision != update_revision_) return;  // superseded by a later decision
    SimTime now = engine.now();
    std::vector<FinishedTask> finished;
    advance_all(now, finished);
    settle(engine, now, finished);
}

}  // namespace stratus
