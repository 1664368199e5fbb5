#pragma once

#include <cstdint>
#include <map>

#include "stratus/model.hpp"

namespace stratus {

/// One-time charge for the memory and storage a VM occupies, applied when
/// the VM becomes resident on a host.
double vm_creation_cost(const VmSpec& vm, const DatacenterCharacteristics& dc);

/// Charge for CPU use: wall-clock seconds the task spent Running times the
/// datacenter's per-second price.
double task_processing_cost(double cpu_seconds, const DatacenterCharacteristics& dc);

/// Charge for moving bytes in or out of the datacenter.
double transfer_cost(std::int64_t bytes, const DatacenterCharacteristics& dc);

struct CostBreakdown {
    double creation = 0.0;
    double processing = 0.0;
    double transfer = 0.0;

    double total() const { return creation + processing + transfer; }

    CostBreakdown& operator+=(const CostBreakdown& other) {
        creation += other.creation;
        processing += other.processing;
        transfer += other.transfer;
        return *this;
    }
};

/// Running totals per VM and per datacenter. All charges flow through the
/// three add_* entry points, so the totals are sums of the individual rules
/// by construction.
class CostLedger {
public:
    void add_creation(int dc_id, int vm_id, double amount);
    void add_processing(int dc_id, int vm_id, double amount);
    void add_transfer(int dc_id, int vm_id, double amount);

    const std::map<int, CostBreakdown>& per_vm() const { return per_vm_; }
    const std::map<int, CostBreakdown>& per_datacenter() const { return per_dc_; }
    double total() const;

    /// Folds another ledger into this one (per-VM keys must not collide
    /// across datacenters; scenario validation guarantees global vm ids).
    void merge(const CostLedger& other);

private:
    std::map<int, CostBreakdown> per_vm_;
    std::map<int, CostBreakdown> per_dc_;
};

}  // namespace stratus
