#include "stratus/results.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "stratus/errors.hpp"

namespace stratus {
namespace {

std::string fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

std::string time_or_absent(const std::optional<SimTime>& t) {
    return fixed6(t ? *t : -1.0);
}

nlohmann::ordered_json breakdown_json(const CostBreakdown& b) {
    nlohmann::ordered_json j;
    j["creation"] = b.creation;
    j["processing"] = b.processing;
    j["transfer"] = b.transfer;
    j["total"] = b.total();
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace

std::string format_results_csv(std::vector<CompletionRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const CompletionRecord& a, const CompletionRecord& b) {
                  return a.task_id < b.task_id;
              });
    std::string out = "task_id,vm_id,host_id,dc_id,submit_t,start_t,finish_t,cpu_seconds,cost\n";
    for (const CompletionRecord& r : records) {
        out += std::to_string(r.task_id);
        out += ',';
        out += std::to_string(r.vm_id);
        out += ',';
        out += std::to_string(r.host_id);
        out += ',';
        out += std::to_string(r.dc_id);
        out += ',';
        out += fixed6(r.submit_t);
        out += ',';
        out += time_or_absent(r.start_t);
        out += ',';
        out += time_or_absent(r.finish_t);
        out += ',';
        out += fixed6(r.cpu_seconds);
        out += ',';
        out += fixed6(r.cost);
        out += '\n';
    }
    return out;
}

std::string format_ledger_json(const CostLedger& ledger) {
    nlohmann::ordered_json root;
    CostBreakdown grand;
    for (const auto& [dc_id, breakdown] : ledger.per_datacenter()) grand += breakdown;
    root["total"] = breakdown_json(grand);
    root["per_vm"] = nlohmann::ordered_json::object();
    for (const auto& [vm_id, breakdown] : ledger.per_vm())
        root["per_vm"][std::to_string(vm_id)] = breakdown_json(breakdown);
    root["per_datacenter"] = nlohmann::ordered_json::object();
    for (const auto& [dc_id, breakdown] : ledger.per_datacenter())
        root["per_datacenter"][std::to_string(dc_id)] = breakdown_json(breakdown);
    return root.dump(2) + "\n";
}

void write_results(const std::vector<CompletionRecord>& records, const CostLedger& ledger,
                   const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir + ": cannot create directory: " + ec.message());
    std::filesystem::path base(dir);
    write_file(base / "results.csv", format_results_csv(records));
    write_file(base / "ledger.json", format_ledger_json(ledger));
}

}  // namespace stratus
