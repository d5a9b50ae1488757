#include <benchmark/benchmark.h>

#include "wsnet/measure.hpp"
#include "wsnet/topology.hpp"

using namespace wsnet;

namespace {

const NetworkGraph& graph300() {
    static const NetworkGraph g = build_network(generate_placement(
        {300, Integration::LogicOnInterconnect, Utilization::Maximized}, Scheme::Rotated));
    return g;
}

const NetworkGraph& graph200() {
    static const NetworkGraph g = build_network(generate_placement(
        {200, Integration::LogicOnInterconnect, Utilization::Rectangular}, Scheme::Aligned));
    return g;
}

const RoutingTables& tables200() {
    static const RoutingTables t = build_routing(graph200());
    return t;
}

void BM_DistancesSerial(benchmark::State& s) {
    for (auto _ : s)
        benchmark::DoNotOptimize(compute_distances_serial(graph300()));
}
void BM_DistancesParallel(benchmark::State& s) {
    for (auto _ : s)
        benchmark::DoNotOptimize(compute_distances(graph300(), true));
}

void BM_OffsetSearchSerial(benchmark::State& s) {
    PlacementParams p;
    p.rotated_max_step_mm = 0.5;
    for (auto _ : s)
        benchmark::DoNotOptimize(rotated_offset_search_serial(200, p));
}
void BM_OffsetSearchParallel(benchmark::State& s) {
    PlacementParams p;
    p.rotated_max_step_mm = 0.5;
    for (auto _ : s)
        benchmark::DoNotOptimize(rotated_offset_search(200, p));
}

void BM_BisectionSerial(benchmark::State& s) {
    const SimpleGraph sg = reticle_graph(graph300(), true);
    BisectionOptions o;
    for (auto _ : s)
        benchmark::DoNotOptimize(bisection_estimate_serial(sg, o));
}
void BM_BisectionParallel(benchmark::State& s) {
    const SimpleGraph sg = reticle_graph(graph300(), true);
    BisectionOptions o;
    for (auto _ : s)
        benchmark::DoNotOptimize(bisection_estimate(sg, o));
}

void seeds(benchmark::State& s, bool parallel) {
    TrafficSpec tr;
    tr.offered_rate = 0.1;
    SimConfig c;
    c.warmup_cycles = 1000;
    c.measure_cycles = 3000;
    c.drain_cycle_cap = 20000;
    for (auto _ : s)
        benchmark::DoNotOptimize(run_seeds(graph200(), tables200(), tr, c, {1, 2, 3}, parallel));
}
void BM_SeedsSerial(benchmark::State& s) { seeds(s, false); }
void BM_SeedsParallel(benchmark::State& s) { seeds(s, true); }

}  // namespace

BENCHMARK(BM_DistancesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistancesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OffsetSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OffsetSearchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BisectionSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BisectionParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
