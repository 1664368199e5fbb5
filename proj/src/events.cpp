#include "stratus/events.hpp"

#include <cstdio>

namespace stratus {
namespace {

std::string fmt_time(SimTime t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", t);
    return buf;
}

}  // namespace

std::string_view to_string(EventTag tag) {
    switch (tag) {
        case EventTag::RegisterDatacenter: return "RegisterDatacenter";
        case EventTag::QueryCis: return "QueryCis";
        case EventTag::CisReply: return "CisReply";
        case EventTag::CreateVm: return "CreateVm";
        case EventTag::VmAck: return "VmAck";
        case EventTag::SubmitTask: return "SubmitTask";
        case EventTag::TaskDone: return "TaskDone";
        case EventTag::InternalUpdate: return "InternalUpdate";
        case EventTag::DestroyVm: return "DestroyVm";
    }
    return "?";
}

std::string describe_payload(const Event& event) {
    struct Visitor {
        std::string operator()(const std::monostate&) const { return {}; }
        std::string operator()(const RegisterDatacenterMsg& m) const {
            return "dc=" + std::to_string(m.dc_id) +
                   " shapes=" + std::to_string(m.host_shapes.size());
        }
        std::string operator()(const QueryCisMsg& m) const {
            return "cores=" + std::to_string(m.requirement.cores) +
                   " ram=" + std::to_string(m.requirement.ram_mb) +
                   " storage=" + std::to_string(m.requirement.storage_mb);
        }
        std::string operator()(const CisReplyMsg& m) const {
            std::string out = "candidates=[";
            for (std::size_t i = 0; i < m.candidates.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(m.candidates[i].dc_id);
            }
            return out + "]";
        }
        std::string operator()(const CreateVmMsg& m) const {
            return "vm=" + std::to_string(m.vm.vm_id) +
                   " cores=" + std::to_string(m.vm.cores) +
                   " ram=" + std::to_string(m.vm.ram_mb) +
                   " storage=" + std::to_string(m.vm.storage_mb) +
                   " policy=" + std::string(to_string(m.vm.task_policy));
        }
        std::string operator()(const VmAckMsg& m) const {
            return "vm=" + std::to_string(m.vm_id) +
                   (m.success ? " ok host=" + std::to_string(m.host_id) : " failed");
        }
        std::string operator()(const SubmitTaskMsg& m) const {
            return "task=" + std::to_string(m.task.task_id) +
                   " vm=" + std::to_string(m.vm_id) +
                   " length=" + fmt_time(m.task.length_mi);
        }
        std::string operator()(const TaskDoneMsg& m) const {
            std::string out = "task=" + std::to_string(m.record.task_id) +
                              " vm=" + std::to_string(m.record.vm_id);
            if (m.record.success && m.record.finish_t)
                out += " finish=" + fmt_time(*m.record.finish_t);
            else
                out += " failed";
            return out;
        }
        std::string operator()(const InternalUpdateMsg& m) const {
            return "rev=" + std::to_string(m.revision);
        }
        std::string operator()(const DestroyVmMsg& m) const {
            return "vm=" + std::to_string(m.vm_id);
        }
    };
    return std::visit(Visitor{}, event.payload);
}

}  // namespace stratus
