#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stratus/accounting.hpp"
#include "stratus/engine.hpp"
#include "stratus/scheduling.hpp"

namespace stratus {

/// Provider entity. Owns its hosts, runs the provisioner and the two-level
/// schedulers, charges the ledger, and keeps exactly one wakeup armed for
/// the earliest projected task finish (stale wakeups carry an old revision
/// and are dropped).
class Datacenter : public Entity {
public:
    explicit Datacenter(DatacenterCharacteristics characteristics);

    /// Must be called with the id obtained from Engine::register_entity.
    void bind(EntityId self) { self_ = self; }

    void on_event(Engine& engine, const Event& event) override;
    std::string_view name() const override { return name_; }

    /// Advertisement for the information service: distinct host shapes plus
    /// the message latency.
    RegisterDatacenterMsg registration() const;

    const DatacenterCharacteristics& characteristics() const { return characteristics_; }
    const std::vector<HostState>& hosts() const { return hosts_; }
    const CostLedger& ledger() const { return ledger_; }

    /// True when every host is back at its spec capacities with no resident
    /// or pending VMs.
    bool hosts_restored() const;

private:
    void handle_create_vm(Engine& engine, const Event& event);
    void handle_submit_task(Engine& engine, const Event& event);
    void handle_destroy_vm(Engine& engine, const Event& event);
    void handle_internal_update(Engine& engine, const Event& event);

    /// Integrates every occupied host up to now with the rates in effect
    /// since the last boundary. Must run before any state mutation.
    void advance_all(SimTime now, std::vector<FinishedTask>& finished);

    /// Applies fresh shares everywhere, emits TaskDone for finished tasks,
    /// and re-arms the wakeup at the new earliest projected finish.
    void settle(Engine& engine, SimTime now, std::vector<FinishedTask>& finished);

    void emit_task_done(Engine& engine, const FinishedTask& done);
    void emit_task_failure(Engine& engine, SimTime now, const TaskUnit& task, int vm_id,
                           int host_id, EntityId fallback_submitter);
    void charge_activation(int vm_id);

    VmState* locate_vm(int vm_id, HostState** host_out);

    DatacenterCharacteristics characteristics_;
    std::string name_;
    EntityId self_ = kNoEntity;
    std::vector<HostState> hosts_;
    CostLedger ledger_;
    std::uint64_t update_revision_ = 0;
    std::map<int, int> vm_host_;          // vm_id -> index into hosts_
    std::set<int> destroyed_vms_;
    std::map<int, EntityId> task_submitter_;
    std::map<int, double> task_accrued_;  // transfer-in charges per live task
};

}  // namespace stratus
