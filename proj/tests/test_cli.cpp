#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Runs the installed binary with output capture through the shell.
CliResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / ("stratus-cli-test-" + std::to_string(counter++));
    fs::create_directories(dir);
    fs::path out = dir / "out.txt";
    fs::path err = dir / "err.txt";
    std::string cmd = std::string(STRATUS_CLI_PATH) + " " + args + " >" + out.string() +
                      " 2>" + err.string();
    int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    fs::remove_all(dir);
    return result;
}

std::string scenario(const char* name) {
    return std::string(STRATUS_SCENARIO_DIR) + "/" + name;
}

fs::path fresh_dir(const char* tag) {
    fs::path dir = fs::temp_directory_path() / (std::string("stratus-") + tag);
    fs::remove_all(dir);
    return dir;
}

constexpr const char* kCsvHeader =
    "task_id,vm_id,host_id,dc_id,submit_t,start_t,finish_t,cpu_seconds,cost";

}  // namespace

TEST_CASE("validate accepts every shipped scenario") {
    for (const char* name : {"fig3_a.json", "fig3_b.json", "fig3_c.json", "fig3_d.json",
                             "staggered_space.json", "staggered_time.json"}) {
        CAPTURE(name);
        CliResult r = run_cli("validate " + scenario(name));
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("OK:") == 0);
    }
}

TEST_CASE("validate rejects a broken document with exit code 1 and a pointed message") {
    fs::path bad = fs::temp_directory_path() / "stratus-bad.json";
    std::ofstream(bad) << R"({"datacenters": [], "broker_plan": {"vm_requests": [],
                              "task_groups": []}})";
    CliResult r = run_cli("validate " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("validation error:") != std::string::npos);
    CHECK(r.err.find("datacenters") != std::string::npos);
    fs::remove(bad);
}

TEST_CASE("validate of a missing file fails cleanly") {
    CliResult r = run_cli("validate /no/such/file.json");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("validation error:") != std::string::npos);
}

TEST_CASE("run without --out streams the results table to stdout") {
    CliResult r = run_cli("run " + scenario("fig3_a.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(kCsvHeader) == 0);
    // Eight task rows follow the header.
    int rows = 0;
    for (char c : r.out)
        if (c == '\n') ++rows;
    CHECK(rows == 9);
    CHECK(r.err.find("records=8") != std::string::npos);
    CHECK(r.err.find("hosts_restored=yes") != std::string::npos);
}

TEST_CASE("run --out writes the results file set") {
    fs::path dir = fresh_dir("run-out");
    CliResult r = run_cli("run " + scenario("fig3_b.json") + " --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "results.csv"));
    CHECK(fs::exists(dir / "ledger.json"));
    CHECK_FALSE(fs::exists(dir / "trace.log"));  // only with --trace

    std::string csv = slurp(dir / "results.csv");
    CHECK(csv.find(kCsvHeader) == 0);
    CHECK(csv.find("\n1,1,0,0,") != std::string::npos);

    std::string ledger = slurp(dir / "ledger.json");
    CHECK(ledger.find("\"total\"") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("run --trace --out also captures the event log") {
    fs::path dir = fresh_dir("run-trace");
    CliResult r = run_cli("run " + scenario("fig3_a.json") + " --trace --out " + dir.string());
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(dir / "trace.log"));
    std::string trace = slurp(dir / "trace.log");
    CHECK(trace.find("RegisterDatacenter") != std::string::npos);
    CHECK(trace.find("TaskDone") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("a valid plan no provider can host exits with the runtime failure code") {
    // Validation passes (the document is well-formed); discovery then finds
    // no host able to take an eight-core VM.
    fs::path big = fs::temp_directory_path() / "stratus-too-big.json";
    std::ofstream(big) << R"({
      "datacenters": [{"hosts": [{"cores": 2, "mips_per_core": 1000, "ram_mb": 4096,
                                  "storage_mb": 4096, "vm_policy": "space_shared"}]}],
      "broker_plan": {
        "vm_requests": [{"vm_id": 1, "cores": 8, "mips_per_core": 1000, "ram_mb": 256,
                         "storage_mb": 256, "task_policy": "space_shared"}],
        "task_groups": [{"submit_time": 0, "tasks": [{"task_id": 1, "length_mi": 100}],
                         "binding": {"1": 1}}]}
    })";
    CliResult validate = run_cli("validate " + big.string());
    CHECK(validate.exit_code == 0);

    CliResult r = run_cli("run " + big.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
    fs::remove(big);
}

TEST_CASE("the built-in demonstration scenario prints its definition and outcome") {
    CliResult r = run_cli("fig3 --variant c");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"description\"") != std::string::npos);
    CHECK(r.out.find(kCsvHeader) != std::string::npos);
    CHECK(r.err.find("records=8") != std::string::npos);

    fs::path dir = fresh_dir("fig3-out");
    CliResult w = run_cli("fig3 --variant c --out " + dir.string());
    CHECK(w.exit_code == 0);
    CHECK(fs::exists(dir / "fig3_c.json"));
    CHECK(fs::exists(dir / "results.csv"));
    fs::remove_all(dir);
}

TEST_CASE("bench prints one row per requested host count") {
    CliResult r = run_cli("bench --hosts 100,200");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("hosts,build_sec,resident_bytes") == 0);
    CHECK(r.out.find("\n100,") != std::string::npos);
    CHECK(r.out.find("\n200,") != std::string::npos);
}

TEST_CASE("bad command lines are usage errors, not crashes") {
    CHECK(run_cli("").exit_code != 0);
    CHECK(run_cli("run").exit_code != 0);            // missing scenario argument
    CHECK(run_cli("fig3 --variant z").exit_code != 0);
    CHECK(run_cli("frobnicate").exit_code != 0);
}
