#include "stratus/broker.hpp"

#include <algorithm>

#include "stratus/errors.hpp"

namespace stratus {

Broker::Broker(BrokerPlan plan, EntityId cis) : plan_(std::move(plan)), cis_(cis) {
    bindings_ = resolve_bindings(plan_);
    for (const VmSpec& vm : plan_.vm_requests) outstanding_[vm.vm_id] = 0;
    for (const TaskGroup& group : plan_.task_groups)
        for (const TaskUnit& task : group.tasks) {
            unresolved_[task.task_id] = group.submit_time;
            ++outstanding_[bindings_.at(task.task_id)];
        }
}

QueryCisMsg Broker::query() const {
    QueryCisMsg msg;
    for (const VmSpec& vm : plan_.vm_requests) {
        msg.requirement.cores = std::max(msg.requirement.cores, vm.cores);
        msg.requirement.ram_mb = std::max(msg.requirement.ram_mb, vm.ram_mb);
        msg.requirement.storage_mb = std::max(msg.requirement.storage_mb, vm.storage_mb);
    }
    return msg;
}

void Broker::on_event(Engine& engine, const Event& event) {
    self_ = event.target;
    switch (event.tag) {
        case EventTag::CisReply: return handle_cis_reply(engine, event);
        case EventTag::VmAck: return handle_vm_ack(engine, event);
        case EventTag::TaskDone: return handle_task_done(engine, event);
        case EventTag::InternalUpdate: return handle_group_timer(engine, event);
        default:
            throw ContractViolation("broker received unexpected " +
                                    std::string(to_string(event.tag)));
    }
}

void Broker::handle_cis_reply(Engine& engine, const Event& event) {
    const auto& msg = std::get<CisReplyMsg>(event.payload);
    if (msg.candidates.empty())
        throw NoSuitableProvider("no registered datacenter can host the requested VMs");
    const CisCandidate& chosen = msg.candidates.front();
    dc_entity_ = chosen.entity;
    dc_id_ = chosen.dc_id;
    dc_latency_ = chosen.msg_latency_sec;

    expected_acks_ = plan_.vm_requests.size();
    for (const VmSpec& vm : plan_.vm_requests)
        engine.send(self_, dc_entity_, dc_latency_, EventTag::CreateVm, CreateVmMsg{vm});
    if (expected_acks_ == 0) arm_group_timers(engine);
}

void Broker::handle_vm_ack(Engine& engine, const Event& event) {
    const auto& msg = std::get<VmAckMsg>(event.payload);
    acks_[msg.vm_id] = AckState{msg.success, msg.host_id};
    if (acks_.size() == expected_acks_ && !groups_armed_) arm_group_timers(engine);
}

void Broker::arm_group_timers(Engine& engine) {
    groups_armed_ = true;
    for (std::size_t g = 0; g < plan_.task_groups.size(); ++g) {
        Event timer;
        timer.fire_at = std::max(engine.now(), plan_.task_groups[g].submit_time);
        timer.source = self_;
        timer.target = self_;
        timer.tag = EventTag::InternalUpdate;
        timer.payload = InternalUpdateMsg{g};
        engine.schedule(std::move(timer));
    }
    // VMs with no planned work are torn down right away.
    if (plan_.destroy_on_completion)
        for (const auto& [vm_id, count] : outstanding_)
            if (count == 0) maybe_destroy(engine, vm_id);
}

void Broker::handle_group_timer(Engine& engine, const Event& event) {
    const auto& msg = std::get<InternalUpdateMsg>(event.payload);
    const TaskGroup& group = plan_.task_groups.at(msg.revision);
    for (const TaskUnit& task : group.tasks) {
        int vm_id = bindings_.at(task.task_id);
        auto ack = acks_.find(vm_id);
        if (ack == acks_.end() || !ack->second.success) {
            // The VM never came up; its tasks resolve locally as failures.
            CompletionRecord record;
            record.task_id = task.task_id;
            record.vm_id = vm_id;
            record.dc_id = dc_id_;
            record.submit_t = engine.now();
            record.success = false;
            resolve(record);
            continue;
        }
        engine.send(self_, dc_entity_, dc_latency_, EventTag::SubmitTask,
                    SubmitTaskMsg{vm_id, task});
    }
}

void Broker::handle_task_done(Engine& engine, const Event& event) {
    const auto& msg = std::get<TaskDoneMsg>(event.payload);
    resolve(msg.record);
    int vm_id = msg.record.vm_id;
    if (plan_.destroy_on_completion && outstanding_.count(vm_id) &&
        outstanding_.at(vm_id) == 0)
        maybe_destroy(engine, vm_id);
}

void Broker::resolve(const CompletionRecord& record) {
    records_.push_back(record);
    unresolved_.erase(record.task_id);
    auto it = outstanding_.find(bindings_.at(record.task_id));
    if (it != outstanding_.end() && it->second > 0) --it->second;
}

void Broker::maybe_destroy(Engine& engine, int vm_id) {
    auto ack = acks_.find(vm_id);
    if (ack == acks_.end() || !ack->second.success) return;
    if (!destroy_sent_.insert(vm_id).second) return;
    engine.send(self_, dc_entity_, dc_latency_, EventTag::DestroyVm, DestroyVmMsg{vm_id});
}

void Broker::finalize() {
    while (!unresolved_.empty()) {
        auto [task_id, submit_time] = *unresolved_.begin();
        CompletionRecord record;
        record.task_id = task_id;
        record.vm_id = bindings_.at(task_id);
        record.dc_id = dc_id_;
        record.submit_t = submit_time;
        record.success = false;
        resolve(record);
    }
}

}  // namespace stratus
