#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "wsnet/config.hpp"
#include "wsnet/matrix.hpp"
#include "wsnet/measure.hpp"

using namespace wsnet;

TEST_SUITE("measure") {

TEST_CASE("refinement lands one finest step below the crossing") {
    const std::vector<double> steps{0.1, 0.01, 0.001, 0.0001};
    for (double knee : {0.3456, 0.05, 0.9999, 0.1, 0.34}) {
        std::vector<double> probed;
        auto lat = [&](double r) { return r >= knee - 1e-12 ? 300.0 : 100.0; };
        const double s = refine_saturation(lat, 200.0, steps, &probed);
        CHECK(s < knee);
        CHECK(knee - s <= 0.0001 + 1e-9);
        for (size_t i = 1; i < probed.size(); ++i)
            CHECK(probed[i] != probed[i - 1]);
    }
}

TEST_CASE("threshold is strict") {
    // exactly twice zero load is not yet saturated
    auto lat = [](double r) { return r <= 0.5 ? 200.0 : 201.0; };
    CHECK(refine_saturation(lat, 200.0, {0.1, 0.01, 0.001, 0.0001}) == doctest::Approx(0.5));
}

TEST_CASE("never crossing reports full rate") {
    auto lat = [](double) { return 1.0; };
    CHECK(refine_saturation(lat, 2.0, {0.1, 0.01}) == doctest::Approx(1.0));
}

TEST_CASE("probe sequence") {
    std::vector<double> probed;
    auto lat = [](double r) { return r > 0.345 ? 10.0 : 1.0; };
    refine_saturation(lat, 2.0, {0.1, 0.01}, &probed);
    const std::vector<double> expect{0.1, 0.2, 0.3, 0.4, 0.31, 0.32, 0.33, 0.34, 0.35};
    REQUIRE(probed.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(probed[i] == doctest::Approx(expect[i]));
}

TEST_CASE("probe config") {
    SimConfig base;
    MeasureOptions o;
    auto c = probe_config(base, o, 64, 0.1, 3000);
    CHECK(c.warmup_cycles == 9000);
    c = probe_config(base, o, 64, 0.1, 100);
    CHECK(c.warmup_cycles == 5000);
    // 5000 packets at 64 * 0.1 / 4 packets per cycle
    CHECK(c.measure_cycles == 5000);
    c = probe_config(base, o, 4, 0.001, 100);
    CHECK(c.measure_cycles == 5000000);
    c = probe_config(base, o, 2000, 1.0, 100);
    CHECK(c.measure_cycles == 5000);
    CHECK(c.drain_cycle_cap == c.measure_cycles + 20000);
}

TEST_CASE("merge takes the mean") {
    SimReport a, b;
    a.avg_packet_latency = 10;
    b.avg_packet_latency = 20;
    a.delivered_packets = 3;
    b.delivered_packets = 5;
    b.deadlock = true;
    const auto m = merge_reports({a, b});
    CHECK(m.avg_packet_latency == doctest::Approx(15));
    CHECK(m.deadlock);
}

TEST_CASE("seeds serial and parallel agree") {
    const auto g = build_network(generate_placement(
        {200, Integration::LogicOnInterconnect, Utilization::Rectangular}, Scheme::Baseline));
    const auto t = build_routing(g);
    TrafficSpec tr;
    tr.offered_rate = 0.1;
    SimConfig c;
    c.warmup_cycles = 500;
    c.measure_cycles = 3000;
    const auto a = run_seeds(g, t, tr, c, {1, 2, 3}, true);
    const auto b = run_seeds(g, t, tr, c, {1, 2, 3}, false);
    REQUIRE(a.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(a[i] == b[i]);
    CHECK_FALSE(a[0] == a[1]);
}

TEST_CASE("zero load latency of two hubs") {
    const auto g = fx::two_hubs();
    const auto t = build_routing(g);
    SimConfig c;
    c.packet_flits = 1;
    auto o = MeasureOptions::quick();
    CHECK(zero_load_latency(g, t, TrafficSpec{}, c, o) == doctest::Approx(9.0));
}

TEST_CASE("saturation search on a ring") {
    const auto g = fx::ring(6);
    const auto t = build_routing(g);
    const auto r = saturation_search(g, t, TrafficSpec{}, SimConfig{}, MeasureOptions{});
    CHECK(r.saturation_rate > 0.05);
    CHECK(r.saturation_rate < 1.0);
    CHECK_FALSE(r.link_limited);
    for (size_t i = 1; i < r.points.size(); ++i)
        CHECK(r.points[i].rate > r.points[i - 1].rate);
    for (const auto& p : r.points)
        if (p.rate <= r.saturation_rate + 1e-12)
            CHECK(p.report.avg_packet_latency <= 2 * r.zero_load_latency);
    CHECK(monotonicity_violations(r.points).empty());
    const std::string csv = sweep_to_csv(r);
    CHECK(csv.rfind("offered_rate,latency_mean", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.points.size()) + 1);
}

TEST_CASE("monotonicity check") {
    std::vector<SweepPoint> s(3);
    s[0].rate = 0.1;
    s[0].report.avg_packet_latency = 50;
    s[1].rate = 0.2;
    s[1].report.avg_packet_latency = 52;
    s[2].rate = 0.3;
    s[2].report.avg_packet_latency = 50;
    CHECK(monotonicity_violations(s).empty());
    s[2].report.avg_packet_latency = 45;
    CHECK(monotonicity_violations(s) == std::vector<int>{2});
}

}

TEST_SUITE("config") {

TEST_CASE("round trip") {
    RunConfig c;
    c.wafer = {200, Integration::LogicOnLogic, Utilization::Rectangular};
    c.scheme = Scheme::Contoured;
    c.sim.selection = SelectionKind::Adaptive;
    c.traffic.pattern = Pattern::Tornado;
    c.traffic.offered_rate = 0.25;
    c.measure.seeds = {4, 5};
    c.output_dir = "runs/x";
    const std::string j = config_to_json(c);
    CHECK(config_to_json(parse_config(j)) == j);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_config(R"({"wafers": {}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"wafer": {"diam": 300}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"vcs": 2}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"traffic": {"rate": 0.1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"measure": {"step": [0.1]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"energy": {"pj": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"bisection": {"run": 1}})"), ConfigError);
}

TEST_CASE("cross field checks") {
    CHECK_THROWS_AS(parse_config(R"({"wafer": {"integration": "loi"}, "scheme": "contoured"})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"schema_version": 2})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"traffic": {"offered_rate": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"vcs_per_channel": 2}})"), DomainError);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"wafer": {"diameter_mm": "big"}})"), ConfigError);
    const auto c = parse_config(R"({"wafer": {"integration": "lol"}, "scheme": "contoured"})");
    CHECK(c.scheme == Scheme::Contoured);
    CHECK(c.wafer.diameter_mm == 300);
}

}

TEST_SUITE("matrix") {

TEST_CASE("two schemes by two patterns") {
    MatrixConfig m;
    m.integrations = {Integration::LogicOnInterconnect};
    m.diameters = {200};
    m.utilizations = {Utilization::Rectangular};
    m.schemes = {Scheme::Baseline, Scheme::Rotated};
    m.patterns = {Pattern::Uniform, Pattern::Neighbor};
    m.measure = MeasureOptions::quick();
    const auto r = run_matrix(m);
    CHECK(r.cells.size() == 4);
    CHECK(r.failures() == 0);
    for (const auto& c : r.cells) {
        CHECK(c.has_baseline);
        if (c.scheme == Scheme::Baseline) {
            CHECK(c.throughput_improvement_pct == 0);
            CHECK(c.latency_improvement_pct == 0);
            CHECK(c.energy_improvement_pct == 0);
        }
    }
    std::set<std::string> keys;
    for (const auto& c : r.cells)
        keys.insert(c.key());
    CHECK(keys.size() == 4);
    CHECK(r.cells[0].scheme == Scheme::Baseline);
    CHECK(r.cells[0].pattern == Pattern::Uniform);
    const std::string csv = matrix_to_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK_FALSE(matrix_heatmaps(r).empty());
}

TEST_CASE("improvement arithmetic") {
    MatrixResult r;
    MatrixCell b;
    b.scheme = Scheme::Baseline;
    b.ok = true;
    b.saturation_rate = 0.1;
    b.zero_load_latency = 100;
    b.energy_per_byte_pj = 500;
    MatrixCell v = b;
    v.scheme = Scheme::Rotated;
    v.saturation_rate = 0.35;
    v.zero_load_latency = 64;
    v.energy_per_byte_pj = 350;
    r.cells = {b, v};
    compute_improvements(r);
    CHECK(r.cells[1].throughput_improvement_pct == doctest::Approx(250));
    CHECK(r.cells[1].latency_improvement_pct == doctest::Approx(36));
    CHECK(r.cells[1].energy_improvement_pct == doctest::Approx(30));
}

TEST_CASE("failed cells are recorded and the run continues") {
    MatrixConfig m;
    m.integrations = {Integration::LogicOnInterconnect};
    m.diameters = {30, 200};
    m.utilizations = {Utilization::Rectangular};
    m.schemes = {Scheme::Baseline};
    m.patterns = {Pattern::Neighbor};
    m.measure = MeasureOptions::quick();
    const auto r = run_matrix(m);
    REQUIRE(r.cells.size() == 2);
    CHECK(r.failures() == 1);
    for (const auto& c : r.cells)
        CHECK(c.ok == (c.diameter_mm == 200));
}

}
