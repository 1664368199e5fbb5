#pragma once

#include <string>
#include <vector>

#include "stratus/accounting.hpp"
#include "stratus/model.hpp"

namespace stratus {

/// Renders completion records as a CSV table with the header
/// task_id,vm_id,host_id,dc_id,submit_t,start_t,finish_t,cpu_seconds,cost
/// sorted by task_id. Times and costs carry six decimals; a task that never
/// started or finished renders those fields as -1.000000.
std::string format_results_csv(std::vector<CompletionRecord> records);

/// Ledger summary document: grand total plus per-VM and per-datacenter
/// breakdowns into creation / processing / transfer components.
std::string format_ledger_json(const CostLedger& ledger);

/// Writes results.csv and ledger.json into `dir`, creating it if needed.
/// Throws IoError naming the path on failure.
void write_results(const std::vector<CompletionRecord>& records, const CostLedger& ledger,
                   const std::string& dir);

}  // namespace stratus
