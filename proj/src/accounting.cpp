#include "stratus/accounting.hpp"

#include "stratus/errors.hpp"

namespace stratus {

double vm_creation_cost(const VmSpec& vm, const DatacenterCharacteristics& dc) {
    return static_cast<double>(vm.ram_mb) * dc.cost_per_ram_mb +
           static_cast<double>(vm.storage_mb) * dc.cost_per_storage_mb;
}

double task_processing_cost(double cpu_seconds, const DatacenterCharacteristics& dc) {
    if (cpu_seconds < 0.0) throw ContractViolation("task_processing_cost: negative cpu_seconds");
    return cpu_seconds * dc.cost_per_cpu_sec;
}

double transfer_cost(std::int64_t bytes, const DatacenterCharacteristics& dc) {
    if (bytes < 0) throw ContractViolation("transfer_cost: negative byte count");
    return static_cast<double>(bytes) * dc.cost_per_byte;
}

void CostLedger::add_creation(int dc_id, int vm_id, double amount) {
    per_vm_[vm_id].creation += amount;
    per_dc_[dc_id].creation += amount;
}

void CostLedger::add_processing(int dc_id, int vm_id, double amount) {
    per_vm_[vm_id].processing += amount;
    per_dc_[dc_id].processing += amount;
}

void CostLedger::add_transfer(int dc_id, int vm_id, double amount) {
    per_vm_[vm_id].transfer += amount;
    per_dc_[dc_id].transfer += amount;
}

double CostLedger::total() const {
    double sum = 0.0;
    for (const auto& [dc_id, breakdown] : per_dc_) sum += breakdown.total();
    return sum;
}

void CostLedger::merge(const CostLedger& other) {
    for (const auto& [vm_id, breakdown] : other.per_vm_) per_vm_[vm_id] += breakdown;
    for (const auto& [dc_id, breakdown] : other.per_dc_) per_dc_[dc_id] += breakdown;
}

}  // namespace stratus
