#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "wsnet/measure.hpp"
#include "wsnet/simnet.hpp"

using namespace wsnet;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Sum of link latencies and hop count along the unique tree path.
std::pair<int, int> tree_path(const NetworkGraph& g, int from, int to) {
    const int n = static_cast<int>(g.routers.size());
    std::vector<int> via(n, -2);
    std::vector<int> stack{from};
    via[from] = -1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int l : g.out_links[u])
            if (via[g.links[l].dst] == -2) {
                via[g.links[l].dst] = l;
                stack.push_back(g.links[l].dst);
            }
    }
    int hops = 0, sum = 0;
    for (int at = to; at != from; at = g.links[via[at]].src) {
        ++hops;
        sum += g.links[via[at]].latency_cycles;
    }
    return {hops, sum};
}

SimConfig small_config() {
    SimConfig c;
    c.warmup_cycles = 1000;
    c.measure_cycles = 4000;
    c.drain_cycle_cap = 20000;
    return c;
}

}  // namespace

TEST_SUITE("simnet") {

TEST_CASE("two hubs one flit") {
    const auto g = fx::two_hubs();
    const auto t = build_routing(g);
    SimConfig c;
    c.packet_flits = 1;
    Simulator s(g, t, c);
    const long id = s.enqueue(0, 1, 1, true);
    while (!s.empty())
        s.step();
    CHECK(s.packet(id).latency() == 2 * 4 + 1);
    CHECK(idle_latency(1, 1, 1, 4) == 9);
}

TEST_CASE("single packets on random trees match the idle formula") {
    std::mt19937_64 rng(2024);
    SimConfig c;
    c.audit = true;
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = fx::random_tree(rng);
        const auto t = build_routing(g);
        Simulator s(g, t, c);
        const int ne = g.endpoint_count();
        for (int src = 0; src < ne; ++src)
            for (int dst = 0; dst < ne; ++dst) {
                if (src == dst)
                    continue;
                const int flits = std::uniform_int_distribution<int>(1, 6)(rng);
                const long id = s.enqueue(src, dst, flits, true);
                while (!s.empty())
                    s.step();
                const auto [hops, sum] =
                    tree_path(g, g.compute_endpoints[src], g.compute_endpoints[dst]);
                const auto& p = s.packet(id);
                CHECK(p.hops == hops);
                CHECK(p.link_latency_sum == sum);
                CHECK(p.latency() == (hops + 1) * c.router_latency_cycles + sum + flits - 1);
            }
        CHECK(s.audit_violations() == 0);
        CHECK_NOTHROW(s.audit());
    }
}

TEST_CASE("zero offered traffic") {
    const auto g = fx::ring(4);
    const auto t = build_routing(g);
    TrafficSpec tr;
    tr.offered_rate = 0;
    const auto r = simulate(g, t, tr, small_config());
    CHECK(r.delivered_packets == 0);
    CHECK(r.energy_j == 0);
    CHECK(r.accepted_rate == 0);
}

TEST_CASE("overloaded link carries one flit per cycle") {
    // two sources at full rate share one link
    const auto g = fx::bottleneck(2);
    const auto t = build_routing(g);
    TrafficSpec tr;
    tr.pattern = Pattern::Hotspot;
    tr.hotspot = fx::sink_endpoint(g);
    tr.offered_rate = 1.0;
    const auto r = simulate(g, t, tr, small_config());
    CHECK(r.endpoints == 2);
    CHECK(r.delivered_rate * 2 > 0.99);
    CHECK(r.delivered_rate * 2 <= 1.0 + 1e-9);
    CHECK(r.link_utilization[0] == doctest::Approx(1.0).epsilon(0.01));
    CHECK_FALSE(r.deadlock);
}

TEST_CASE("reports are bit identical across reruns") {
    const auto g = build_network(generate_placement(
        {200, Integration::LogicOnInterconnect, Utilization::Rectangular}, Scheme::Aligned));
    const auto t = build_routing(g);
    for (SelectionKind sel : {SelectionKind::Random, SelectionKind::Adaptive}) {
        TrafficSpec tr;
        tr.offered_rate = 0.15;
        auto c = small_config();
        c.selection = sel;
        c.seed = 17;
        const auto a = simulate(g, t, tr, c);
        const auto b = simulate(g, t, tr, c);
        CHECK(a == b);
        CHECK(report_to_json(a, true) == report_to_json(b, true));
        c.seed = 18;
        CHECK_FALSE(simulate(g, t, tr, c) == a);
    }
}

TEST_CASE("audit stays clean under heavy load") {
    const auto g = build_network(generate_placement(
        {200, Integration::LogicOnInterconnect, Utilization::Rectangular}, Scheme::Rotated));
    const auto t = build_routing(g);
    for (Pattern p : {Pattern::Uniform, Pattern::Tornado}) {
        TrafficSpec tr;
        tr.pattern = p;
        tr.offered_rate = 0.6;
        auto c = small_config();
        c.audit = true;
        c.selection = SelectionKind::Adaptive;
        const auto r = simulate(g, t, tr, c);
        CHECK(r.audit_violations == 0);
        CHECK_FALSE(r.deadlock);
    }
}

TEST_CASE("latency grows with load") {
    const auto g = fx::ring(6);
    const auto t = build_routing(g);
    TrafficSpec lo, hi;
    lo.offered_rate = 0.001;
    hi.offered_rate = 0.5;
    auto c = small_config();
    c.measure_cycles = 20000;
    c.drain_cycle_cap = 40000;
    CHECK(simulate(g, t, lo, c).avg_packet_latency < simulate(g, t, hi, c).avg_packet_latency);
}

TEST_CASE("one virtual channel only") {
    SimConfig c;
    c.vcs_per_channel = 2;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.vcs_per_channel = 1;
    c.buffer_depth_flits = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("energy per flit") {
    SimReport r;
    r.avg_pipeline_stages = 5;
    r.avg_hops = 3;
    r.accepted_rate = 0.1;
    r.endpoints = 10;
    const auto e = energy_report(r, EnergyModel{}, 2000);
    CHECK(e.link_pj_per_flit == doctest::Approx(160000));
    CHECK(e.router_pj_per_flit == 0);
    CHECK(e.energy_per_byte_pj == doctest::Approx(80));
    CHECK(e.power_w == doctest::Approx(160000e-12 * 0.1 * 10 * 1e9));
    r.avg_pipeline_stages = 0;
    CHECK(energy_report(r, EnergyModel{}, 2000).link_pj_per_flit == 0);
    EnergyModel withrouter;
    withrouter.router_energy_pj_per_flit = 100;
    CHECK(energy_report(r, withrouter, 2000).pj_per_flit == doctest::Approx(300));
}

TEST_CASE("replay ping") {
    const auto g = fx::two_hubs();
    const auto t = build_routing(g);
    const auto rep = replay_trace(g, t, parse_trace(slurp(WSNET_FIXTURES "/traces/ping.goal")),
                                  SimConfig{});
    CHECK(rep.sim.delivered_packets == 2);
    CHECK(rep.packets.size() == 2);
    // the reply leaves only after the request has landed
    CHECK(rep.packets[1].injection_cycle >= rep.packets[0].tail_arrival);
    CHECK(rep.makespan == rep.packets[1].tail_arrival);
}

TEST_CASE("replay packetization and ordering") {
    const auto g = fx::ring(4);
    const auto t = build_routing(g);
    const std::string text = "num_ranks 3\nrank 0 {\na: send 4096 to 2\nb: send 100 to 1\n"
                             "c: calc 30\nb requires a\nc requires b\n}\nrank 1 {\nx: recv 100 from 0\n}\n"
                             "rank 2 {\ny: recv 4096 from 0\n}\n";
    const auto rep = replay_trace(g, t, parse_trace(text), SimConfig{});
    REQUIRE(rep.send_packets[0][0].size() == 2);
    REQUIRE(rep.send_packets[0][1].size() == 1);
    long last = 0;
    for (long id : rep.send_packets[0][0])
        last = std::max(last, rep.packets[id].tail_arrival);
    CHECK(rep.event_end[0][0] == last);
    CHECK(rep.packets[rep.send_packets[0][1][0]].injection_cycle >= last);
    CHECK(rep.event_end[0][2] == rep.event_start[0][2] + 30);
    CHECK(rep.event_end[2][0] == last);
    CHECK(rep.packets[0].flits == 2);
}

TEST_CASE("empty replay") {
    const auto g = fx::two_hubs();
    const auto t = build_routing(g);
    const auto rep = replay_trace(g, t, parse_trace(""), SimConfig{});
    CHECK(rep.sim.delivered_packets == 0);
    CHECK(rep.makespan == 0);
}

TEST_CASE("replay rejects too many ranks") {
    const auto g = fx::two_hubs();
    const auto t = build_routing(g);
    CHECK_THROWS_AS(
        replay_trace(g, t, parse_trace(slurp(WSNET_FIXTURES "/traces/incast8.goal")), SimConfig{}),
        TraceError);
}

}
