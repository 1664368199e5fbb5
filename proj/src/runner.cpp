#include "stratus/runner.hpp"

#include <algorithm>
#include <exception>
#include <memory>

#include "stratus/broker.hpp"
#include "stratus/cis.hpp"
#include "stratus/datacenter.hpp"
#include "stratus/errors.hpp"

namespace stratus {

RunOutput run_scenario(const Scenario& scenario, bool keep_trace) {
    validate_scenario(scenario);

    Engine engine;
    engine.set_trace_enabled(keep_trace);

    CloudInformationService cis;
    EntityId cis_id = engine.register_entity(cis);

    std::vector<std::unique_ptr<Datacenter>> datacenters;
    std::vector<EntityId> dc_entities;
    for (const DatacenterCharacteristics& characteristics : scenario.datacenters) {
        datacenters.push_back(std::make_unique<Datacenter>(characteristics));
        EntityId id = engine.register_entity(*datacenters.back());
        datacenters.back()->bind(id);
        dc_entities.push_back(id);
    }

    Broker broker(scenario.broker_plan, cis_id);
    EntityId broker_id = engine.register_entity(broker);
    broker.bind(broker_id);

    for (std::size_t d = 0; d < datacenters.size(); ++d)
        engine.send(dc_entities[d], cis_id, 0.0, EventTag::RegisterDatacenter,
                    datacenters[d]->registration());
    if (!scenario.broker_plan.vm_requests.empty())
        engine.send(broker_id, cis_id, 0.0, EventTag::QueryCis, broker.query());

    SimTime end_time = 0.0;
    try {
        end_time = engine.run();
    } catch (const EntityFault& fault) {
        try {
            std::rethrow_if_nested(fault);
        } catch (const NoSuitableProvider&) {
            throw;  // the real cause; the dispatch wrapper adds nothing here
        } catch (...) {
            // any other nested error keeps its dispatch context
        }
        throw;
    }
    broker.finalize();

    RunOutput out;
    out.records = broker.records();
    std::sort(out.records.begin(), out.records.end(),
              [](const CompletionRecord& a, const CompletionRecord& b) {
                  return a.task_id < b.task_id;
              });
    out.hosts_restored = true;
    for (const auto& dc : datacenters) {
        out.ledger.merge(dc->ledger());
        out.hosts_restored = out.hosts_restored && dc->hosts_restored();
    }
    out.trace_hash = engine.trace_hash();
    if (keep_trace) out.trace = engine.trace();
    out.end_time = end_time;
    out.event_counts = engine.tag_counts();
    return out;
}

}  // namespace stratus
