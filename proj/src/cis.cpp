#include "stratus/cis.hpp"

#include "stratus/errors.hpp"

namespace stratus {

bool CloudInformationService::matches(const DcEntry& entry, const VmRequirement& req) {
    for (const HostShape& shape : entry.host_shapes)
        if (shape.cores >= req.cores && shape.ram_mb >= req.ram_mb &&
            shape.storage_mb >= req.storage_mb)
            return true;
    return false;
}

void CloudInformationService::on_event(Engine& engine, const Event& event) {
    switch (event.tag) {
        case EventTag::RegisterDatacenter: {
            const auto& msg = std::get<RegisterDatacenterMsg>(event.payload);
            for (const DcEntry& entry : entries_)
                if (entry.dc_id == msg.dc_id)
                    throw DuplicateDatacenter("datacenter " + std::to_string(msg.dc_id) +
                                              " registered twice");
            entries_.push_back(
                DcEntry{msg.dc_id, event.source, msg.msg_latency_sec, msg.host_shapes});
            break;
        }
        case EventTag::QueryCis: {
            const auto& msg = std::get<QueryCisMsg>(event.payload);
            CisReplyMsg reply;
            for (const DcEntry& entry : entries_)
                if (matches(entry, msg.requirement))
                    reply.candidates.push_back(
                        CisCandidate{entry.dc_id, entry.entity, entry.msg_latency_sec});
            engine.send(event.target, event.source, 0.0, EventTag::CisReply, std::move(reply));
            break;
        }
        default:
            throw ContractViolation("cis received unexpected " +
                                    std::string(to_string(event.tag)));
    }
}

}  // namespace stratus
