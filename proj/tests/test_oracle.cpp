#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "stratus/errors.hpp"
#include "stratus/presets.hpp"
#include "stratus/runner.hpp"
#include "support/oracle.hpp"
#include "support/random_scenarios.hpp"

using namespace stratus;

namespace {

// Completion times for the built-in two-VM demonstration variants, worked
// out by hand from the share rules. Frozen here; the oracle must land on
// them regardless of its step size.
const std::map<char, std::map<int, double>> kGolden = {
    {'a', {{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 3}, {7, 4}, {8, 4}}},
    {'b', {{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 4}, {6, 4}, {7, 4}, {8, 4}}},
    {'c', {{1, 2}, {2, 2}, {3, 4}, {4, 4}, {5, 2}, {6, 2}, {7, 4}, {8, 4}}},
    {'d', {{1, 4}, {2, 4}, {3, 4}, {4, 4}, {5, 4}, {6, 4}, {7, 4}, {8, 4}}},
};

}  // namespace

TEST_CASE("the oracle reproduces the hand-computed variant tables") {
    for (const auto& [variant, table] : kGolden) {
        CAPTURE(variant);
        testing::OracleResult result = testing::oracle_run(canonical_scenario(variant), 1e-3);
        REQUIRE(result.tasks.size() == 8);
        for (const auto& [task_id, expected_finish] : table) {
            const testing::OracleTask& t = result.tasks.at(task_id);
            REQUIRE(t.success);
            REQUIRE(t.finish_t.has_value());
            CHECK(*t.finish_t == doctest::Approx(expected_finish).epsilon(1e-9));
        }
    }
}

TEST_CASE("step size does not move the oracle's answers") {
    for (char variant : {'a', 'b', 'c', 'd'}) {
        CAPTURE(variant);
        testing::OracleResult fine = testing::oracle_run(canonical_scenario(variant), 1e-3);
        testing::OracleResult coarse = testing::oracle_run(canonical_scenario(variant), 0.1);
        REQUIRE(fine.tasks.size() == coarse.tasks.size());
        for (const auto& [task_id, ft] : fine.tasks) {
            const testing::OracleTask& ct = coarse.tasks.at(task_id);
            REQUIRE(ft.success == ct.success);
            CHECK(*ft.finish_t == doctest::Approx(*ct.finish_t).epsilon(1e-6));
            CHECK(*ft.start_t == doctest::Approx(*ct.start_t).epsilon(1e-6));
        }
        CHECK(fine.end_time == doctest::Approx(coarse.end_time).epsilon(1e-6));
    }
}

TEST_CASE("the oracle refuses a plan no provider can host, like the real thing") {
    Scenario s = canonical_scenario('a');
    s.broker_plan.vm_requests[0].cores = 64;
    CHECK_THROWS_AS(testing::oracle_run(s, 0.01), NoSuitableProvider);
}

TEST_CASE("oracle and simulator agree on the staggered long-haul workload") {
    testing::OracleResult expected =
        testing::oracle_run(workload_scenario(SharePolicy::SpaceShared), 1.0);
    RunOutput actual = run_scenario(workload_scenario(SharePolicy::SpaceShared));
    REQUIRE(actual.records.size() == 500);
    for (const CompletionRecord& r : actual.records) {
        const testing::OracleTask& t = expected.tasks.at(r.task_id);
        REQUIRE(t.success == r.success);
        CHECK(*r.finish_t == doctest::Approx(*t.finish_t).epsilon(1e-9));
    }
}

TEST_CASE("oracle and simulator agree across generated scenarios") {
    // A representative slice; the acceptance suite sweeps two hundred.
    for (std::uint64_t seed = 500; seed < 525; ++seed) {
        CAPTURE(seed);
        Scenario s = testing::random_scenario(seed);
        RunOutput actual = run_scenario(s);
        testing::OracleResult expected = testing::oracle_run(s, 1e-2);

        REQUIRE(actual.records.size() == expected.tasks.size());
        for (const CompletionRecord& r : actual.records) {
            CAPTURE(r.task_id);
            const testing::OracleTask& t = expected.tasks.at(r.task_id);
            REQUIRE(t.success == r.success);
            if (!r.success) continue;
            CHECK(*r.finish_t == doctest::Approx(*t.finish_t).epsilon(1e-9));
            CHECK(*r.start_t == doctest::Approx(*t.start_t).epsilon(1e-9));
            CHECK(r.vm_id == t.vm_id);
        }
    }
}
