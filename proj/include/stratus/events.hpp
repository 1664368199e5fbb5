#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stratus/model.hpp"

namespace stratus {

using EntityId = int;
constexpr EntityId kNoEntity = -1;

enum class EventTag {
    RegisterDatacenter,
    QueryCis,
    CisReply,
    CreateVm,
    VmAck,
    SubmitTask,
    TaskDone,
    InternalUpdate,
    DestroyVm,
};

constexpr std::size_t kEventTagCount = 9;

std::string_view to_string(EventTag tag);

/// Distinct host shape advertised to the information service.
struct HostShape {
    int cores = 0;
    double mips_per_core = 0.0;
    std::int64_t ram_mb = 0;
    std::int64_t storage_mb = 0;

    bool operator==(const HostShape&) const = default;
};

/// Minimum per-VM footprint a provider must be able to host.
struct VmRequirement {
    int cores = 0;
    std::int64_t ram_mb = 0;
    std::int64_t storage_mb = 0;
};

struct RegisterDatacenterMsg {
    int dc_id = 0;
    std::vector<HostShape> host_shapes;
    double msg_latency_sec = 0.0;
};

struct QueryCisMsg {
    VmRequirement requirement;
};

/// One provider candidate returned by the information service.
struct CisCandidate {
    int dc_id = 0;
    EntityId entity = kNoEntity;
    double msg_latency_sec = 0.0;
};

struct CisReplyMsg {
    std::vector<CisCandidate> candidates;
};

struct CreateVmMsg {
    VmSpec vm;
};

struct VmAckMsg {
    int vm_id = 0;
    bool success = false;
    int host_id = -1;
};

struct SubmitTaskMsg {
    int vm_id = 0;
    TaskUnit task;
};

struct TaskDoneMsg {
    CompletionRecord record;
};

/// Self-addressed wakeup. The revision stamps which scheduling decision the
/// event belongs to; receivers drop events whose revision went stale.
struct InternalUpdateMsg {
    std::uint64_t revision = 0;
};

struct DestroyVmMsg {
    int vm_id = 0;
};

using EventPayload = std::variant<std::monostate,
                                  RegisterDatacenterMsg,
                                  QueryCisMsg,
                                  CisReplyMsg,
                                  CreateVmMsg,
                                  VmAckMsg,
                                  SubmitTaskMsg,
                                  TaskDoneMsg,
                                  InternalUpdateMsg,
                                  DestroyVmMsg>;

struct Event {
    SimTime fire_at = 0.0;
    std::uint64_t seq = 0;  // assigned by the engine; total order within a timestamp
    EntityId source = kNoEntity;
    EntityId target = kNoEntity;
    EventTag tag = EventTag::InternalUpdate;
    EventPayload payload;
};

/// Short single-line payload description used in event traces.
std::string describe_payload(const Event& event);

}  // namespace stratus
