#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stratus/bench.hpp"
#include "stratus/errors.hpp"
#include "stratus/presets.hpp"
#include "stratus/results.hpp"
#include "stratus/runner.hpp"
#include "stratus/scenario.hpp"

namespace {

std::vector<std::size_t> parse_counts(const std::string& csv) {
    std::vector<std::size_t> counts;
    std::size_t begin = 0;
    while (begin <= csv.size()) {
        std::size_t end = csv.find(',', begin);
        if (end == std::string::npos) end = csv.size();
        std::string item = csv.substr(begin, end - begin);
        try {
            std::size_t consumed = 0;
            unsigned long long value = std::stoull(item, &consumed);
            if (consumed != item.size() || value == 0) throw std::invalid_argument(item);
            counts.push_back(static_cast<std::size_t>(value));
        } catch (const std::exception&) {
            throw stratus::ValidationError("--hosts: '" + item +
                                           "' is not a positive integer");
        }
        begin = end + 1;
    }
    return counts;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw stratus::IoError(path.string() + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw stratus::IoError(path.string() + ": write failed");
}

void print_summary(const stratus::RunOutput& out) {
    char line[256];
    double total = 0.0;
    for (const auto& [dc_id, breakdown] : out.ledger.per_datacenter())
        total += breakdown.total();
    std::snprintf(line, sizeof line,
                  "records=%zu end_time=%.6f total_cost=%.6f hosts_restored=%s "
                  "trace_hash=%016llx\n",
                  out.records.size(), out.end_time, total,
                  out.hosts_restored ? "yes" : "no",
                  static_cast<unsigned long long>(out.trace_hash));
    std::cerr << line;
}

int do_run(const std::string& path, const std::string& out_dir, bool trace) {
    stratus::Scenario scenario = stratus::load_scenario_file(path);
    stratus::RunOutput out = stratus::run_scenario(scenario, trace);
    print_summary(out);
    if (!out_dir.empty()) {
        stratus::write_results(out.records, out.ledger, out_dir);
        std::filesystem::path base(out_dir);
        if (trace) {
            std::string text;
            for (const std::string& entry : out.trace) {
                text += entry;
                text += '\n';
            }
            write_text(base / "trace.log", text);
        }
        std::cout << "wrote " << (base / "results.csv").string() << " and "
                  << (base / "ledger.json").string()
                  << (trace ? " and " + (base / "trace.log").string() : std::string())
                  << "\n";
    } else {
        std::cout << stratus::format_results_csv(out.records);
        if (trace)
            for (const std::string& entry : out.trace) std::cerr << entry << "\n";
    }
    return 0;
}

int do_validate(const std::string& path) {
    stratus::Scenario scenario = stratus::load_scenario_file(path);
    std::size_t hosts = 0;
    for (const auto& dc : scenario.datacenters) hosts += dc.hosts.size();
    std::size_t tasks = 0;
    for (const auto& group : scenario.broker_plan.task_groups) tasks += group.tasks.size();
    std::cout << "OK: " << scenario.datacenters.size() << " datacenter(s), " << hosts
              << " host(s), " << scenario.broker_plan.vm_requests.size() << " vm(s), "
              << tasks << " task(s)";
    if (!scenario.description.empty()) std::cout << " — " << scenario.description;
    std::cout << "\n";
    return 0;
}

int do_bench(const std::string& hosts_csv) {
    std::vector<stratus::BenchRow> rows = stratus::bench_instantiate(parse_counts(hosts_csv));
    std::cout << stratus::format_bench_table(rows);
    return 0;
}

int do_fig3(char variant, const std::string& out_dir) {
    stratus::Scenario scenario = stratus::canonical_scenario(variant);
    stratus::RunOutput out = stratus::run_scenario(scenario);
    print_summary(out);
    if (!out_dir.empty()) {
        stratus::write_results(out.records, out.ledger, out_dir);
        std::filesystem::path base(out_dir);
        std::string name = std::string("fig3_") + variant + ".json";
        write_text(base / name, stratus::emit_scenario(scenario));
        std::cout << "wrote " << (base / name).string() << ", "
                  << (base / "results.csv").string() << " and "
                  << (base / "ledger.json").string() << "\n";
    } else {
        std::cout << stratus::emit_scenario(scenario) << "\n"
                  << stratus::format_results_csv(out.records);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stratus — deterministic cloud data-center simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::string hosts_csv = "100,1000,10000,100000";
    std::string variant = "a";
    bool trace = false;

    CLI::App* run_cmd = app.add_subcommand("run", "Simulate a scenario file");
    run_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run_cmd->add_option("--out", out_dir,
                        "directory for results.csv, ledger.json and trace.log");
    run_cmd->add_flag("--trace", trace, "keep the full event trace");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Parse and validate a scenario file");
    validate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();

    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Measure model instantiation time and memory");
    bench_cmd->add_option("--hosts", hosts_csv, "comma-separated host counts");

    CLI::App* fig3_cmd = app.add_subcommand(
        "fig3", "Run the built-in two-VM demonstration scenario and print its results");
    fig3_cmd->add_option("--variant", variant, "policy variant: a, b, c or d")
        ->check(CLI::IsMember({"a", "b", "c", "d"}));
    fig3_cmd->add_option("--out", out_dir, "directory for the scenario file and results");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) return do_run(scenario_path, out_dir, trace);
        if (validate_cmd->parsed()) return do_validate(scenario_path);
        if (bench_cmd->parsed()) return do_bench(hosts_csv);
        if (fig3_cmd->parsed()) return do_fig3(variant[0], out_dir);
    } catch (const stratus::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
