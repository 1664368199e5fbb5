#pragma once

#include <vector>

#include "stratus/engine.hpp"

namespace stratus {

/// Cloud information service: the registry brokers query to discover
/// providers. Registration order is preserved; queries answer with every
/// datacenter able to host at least one VM of the requested footprint.
class CloudInformationService : public Entity {
public:
    void on_event(Engine& engine, const Event& event) override;
    std::string_view name() const override { return "cis"; }

    std::size_t registered_count() const { return entries_.size(); }

private:
    struct DcEntry {
        int dc_id = 0;
        EntityId entity = kNoEntity;
        double msg_latency_sec = 0.0;
        std::vector<HostShape> host_shapes;
    };

    /// A provider qualifies when any single host shape covers all three
    /// requirement dimensions at once.
    static bool matches(const DcEntry& entry, const VmRequirement& req);

    std::vector<DcEntry> entries_;
};

}  // namespace stratus
