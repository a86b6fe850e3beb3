#include "support.hpp"

#include "pathwise/solver.hpp"
#include "pathwise/telemetry.hpp"

#include <gtest/gtest.h>

#include <thread>
#include <vector>

using namespace pathwise;

TEST(Telemetry, RecordAccumulates) {
    Telemetry t;
    t.record("labels_fw");
    t.record("labels_fw");
    t.record("join_attempts", 5);
    EXPECT_EQ(t.counter("labels_fw"), 2U);
    EXPECT_EQ(t.counter("join_attempts"), 5U);
    EXPECT_EQ(t.counter("missing"), 0U);
}

TEST(Telemetry, DisabledIgnoresEverything) {
    Telemetry t(false);
    t.record("labels_fw", 3);
    t.add_time("solve", 1.0);
    { auto phase = t.time_phase("join"); }
    EXPECT_EQ(t.counter("labels_fw"), 0U);
    EXPECT_TRUE(t.counters().empty());
    EXPECT_TRUE(t.timers().empty());
}

TEST(Telemetry, ScopedPhaseAddsTime) {
    Telemetry t;
    {
        auto phase = t.time_phase("pass");
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    EXPECT_GT(t.timer("pass"), 0.0);
}

TEST(Telemetry, ConcurrentIncrements) {
    Telemetry t;
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&t] {
            for (int k = 0; k < 10000; ++k)
                t.record("hits");
        });
    for (auto& w : workers)
        w.join();
    EXPECT_EQ(t.counter("hits"), 40000U);
}

TEST(Telemetry, JsonRoundTrip) {
    Telemetry t;
    t.record("labels_fw", 7);
    t.record("labels_bw", 3);
    const auto parsed = parse_counters(t.report(ReportFormat::Json));
    ASSERT_TRUE(parsed.has_value());
    for (const auto& [name, value] : t.counters())
        EXPECT_EQ(parsed->at(name), value) << name;
    EXPECT_EQ(parsed->at("kept_fw"), 0U);
    EXPECT_FALSE(parse_counters(R"({"schema": "other/1", "counters": {}})").has_value());
}

TEST(Telemetry, EmptyReportListsSolverCountersAsZero) {
    Telemetry t;
    const auto parsed = parse_counters(t.report(ReportFormat::Json));
    ASSERT_TRUE(parsed.has_value());
    for (const auto& [name, value] : *parsed)
        EXPECT_EQ(value, 0U) << name;
    const auto text = t.report(ReportFormat::Text);
    EXPECT_NE(text.find(std::string(counters::kLabelsForward)), std::string::npos);
}

TEST(Telemetry, SolverRunPopulatesCounters) {
    Telemetry t;
    const auto result = solve(pathwise::testing::t4(), pathwise::testing::config_for(RelaxationScheme::DSSR), &t);
    EXPECT_GE(t.counter(counters::kRelaxationIters), 1U);
    EXPECT_GE(t.counter(counters::kJoinSuccesses), 1U);
    EXPECT_EQ(t.counter(counters::kLabelsForward), result.stats.labels_forward);
    EXPECT_EQ(t.counter(counters::kLabelsBackward), result.stats.labels_backward);
    const auto text = t.report(ReportFormat::Text);
    EXPECT_NE(text.find("labels_fw"), std::string::npos);
    EXPECT_NE(text.find("labels_bw"), std::string::npos);
}

TEST(Telemetry, DoesNotChangeResults) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto p = pathwise::testing::random_cyclic(seed, 8);
        Telemetry on(true), off(false);
        const auto a = solve(p, pathwise::testing::config_for(RelaxationScheme::DSSRC), &on);
        const auto b = solve(p, pathwise::testing::config_for(RelaxationScheme::DSSRC), &off);
        EXPECT_EQ(a.path.tour, b.path.tour);
        EXPECT_EQ(a.path.cost, b.path.cost);
    }
}
