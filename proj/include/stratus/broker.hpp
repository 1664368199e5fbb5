#pragma once

#include <map>
#include <set>
#include <vector>

#include "stratus/engine.hpp"

namespace stratus {

/// Consumer entity. Discovers a provider through the information service,
/// creates the plan's VMs there, releases task groups at their submission
/// times, collects completion records, and optionally tears VMs down once
/// their share of the plan is done.
class Broker : public Entity {
public:
    Broker(BrokerPlan plan, EntityId cis);

    void bind(EntityId self) { self_ = self; }

    void on_event(Engine& engine, const Event& event) override;
    std::string_view name() const override { return "broker"; }

    /// Provider query: the per-dimension maximum over the plan's VMs.
    QueryCisMsg query() const;

    const std::vector<CompletionRecord>& records() const { return records_; }
    std::size_t planned_tasks() const { return bindings_.size(); }
    bool all_resolved() const { return unresolved_.empty(); }

    /// Resolves tasks that never completed (starved VMs under
    /// destroy_on_completion=false) as failed records. Call after the event
    /// queue drained.
    void finalize();

private:
    void handle_cis_reply(Engine& engine, const Event& event);
    void handle_vm_ack(Engine& engine, const Event& event);
    void handle_task_done(Engine& engine, const Event& event);
    void handle_group_timer(Engine& engine, const Event& event);

    void arm_group_timers(Engine& engine);
    void resolve(const CompletionRecord& record);
    void maybe_destroy(Engine& engine, int vm_id);

    struct AckState {
        bool success = false;
        int host_id = -1;
    };

    BrokerPlan plan_;
    EntityId cis_ = kNoEntity;
    EntityId self_ = kNoEntity;

    std::map<int, int> bindings_;         // task_id -> vm_id
    std::map<int, SimTime> unresolved_;   // task_id -> planned submit time
    std::map<int, int> outstanding_;      // vm_id -> plan tasks not yet resolved

    EntityId dc_entity_ = kNoEntity;
    int dc_id_ = -1;
    double dc_latency_ = 0.0;

    std::size_t expected_acks_ = 0;
    std::map<int, AckState> acks_;
    std::set<int> destroy_sent_;
    bool groups_armed_ = false;

    std::vector<CompletionRecord> records_;
};

}  // namespace stratus
