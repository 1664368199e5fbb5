#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stratus {

struct BenchRow {
    std::size_t hosts = 0;
    double build_sec = 0.0;
    std::int64_t resident_bytes = 0;
};

/// Constructs — without running — the full provider model (engine, registry,
/// datacenter with N single-core hosts, idle consumer) at each host count and
/// measures wall-clock build time plus the growth in the process's own heap
/// accounting. Everything is torn down between rows, so rows are independent.
std::vector<BenchRow> bench_instantiate(const std::vector<std::size_t>& host_counts);

/// Renders rows as a `hosts,build_sec,resident_bytes` CSV table.
std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace stratus
