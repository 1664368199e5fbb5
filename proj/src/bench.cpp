#include "stratus/bench.hpp"

#include <malloc.h>

#include <chrono>
#include <cstdio>
#include <memory>

#include "stratus/broker.hpp"
#include "stratus/cis.hpp"
#include "stratus/datacenter.hpp"
#include "stratus/engine.hpp"
#include "stratus/errors.hpp"

namespace stratus {
namespace {

/// Bytes the allocator currently holds on behalf of the process: arena
/// allocations in use plus mmap'd blocks.
std::int64_t allocator_bytes() {
    struct mallinfo2 info = ::mallinfo2();
    return static_cast<std::int64_t>(info.uordblks) + static_cast<std::int64_t>(info.hblkhd);
}

DatacenterCharacteristics bench_shape(std::size_t host_count) {
    DatacenterCharacteristics dc;
    dc.dc_id = 0;
    HostSpec host;
    host.cores = 1;
    host.mips_per_core = 1000.0;
    host.ram_mb = 1024;
    host.storage_mb = 2'000'000;
    host.vm_policy = SharePolicy::SpaceShared;
    dc.hosts.reserve(host_count);
    for (std::size_t h = 0; h < host_count; ++h) {
        host.host_id = static_cast<int>(h);
        dc.hosts.push_back(host);
    }
    return dc;
}

}  // namespace

std::vector<BenchRow> bench_instantiate(const std::vector<std::size_t>& host_counts) {
    std::vector<BenchRow> rows;
    rows.reserve(host_counts.size());
    for (std::size_t count : host_counts) {
        if (count == 0) throw ContractViolation("bench host counts must be positive");
        std::int64_t before = allocator_bytes();
        auto started = std::chrono::steady_clock::now();

        auto engine = std::make_unique<Engine>();
        auto cis = std::make_unique<CloudInformationService>();
        EntityId cis_id = engine->register_entity(*cis);
        auto datacenter = std::make_unique<Datacenter>(bench_shape(count));
        EntityId dc_id = engine->register_entity(*datacenter);
        datacenter->bind(dc_id);
        auto broker = std::make_unique<Broker>(BrokerPlan{}, cis_id);
        broker->bind(engine->register_entity(*broker));
        engine->send(dc_id, cis_id, 0.0, EventTag::RegisterDatacenter,
                     datacenter->registration());

        auto stopped = std::chrono::steady_clock::now();
        std::int64_t after = allocator_bytes();

        BenchRow row;
        row.hosts = count;
        row.build_sec = std::chrono::duration<double>(stopped - started).count();
        row.resident_bytes = after - before;
        rows.push_back(row);
        // the model is torn down here, before the next row's baseline snapshot
    }
    return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
    std::string out = "hosts,build_sec,resident_bytes\n";
    for (const BenchRow& row : rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%zu,%.6f,%lld\n", row.hosts, row.build_sec,
                      static_cast<long long>(row.resident_bytes));
        out += line;
    }
    return out;
}

}  // namespace stratus
