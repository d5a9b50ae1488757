#include <omp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsnet/config.hpp"
#include "wsnet/matrix.hpp"
#include "wsnet/measure.hpp"
#include "wsnet/routing.hpp"
#include "wsnet/simnet.hpp"
#include "wsnet/topology.hpp"
#include "wsnet/traffic.hpp"

using namespace wsnet;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kInvariant = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    out << text;
}

double round_to(double v, int digits) {
    const double s = std::pow(10.0, digits);
    return std::round(v * s) / s;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Flags shared by every subcommand that needs a topology.
struct Common {
    std::string config;
    double diameter = 0;
    std::string utilization, integration, scheme, intra, placement;
    uint64_t seed = 0;
    std::string selection;
    bool json = false;

    void add_topology(CLI::App* c) {
        c->add_option("--diameter", diameter, "wafer diameter in mm");
        c->add_option("--utilization", utilization, "rect | max");
        c->add_option("--integration", integration, "loi | lol");
        c->add_option("--scheme", scheme, "baseline | aligned | interleaved | rotated | contoured");
        c->add_option("--intra", intra, "interconnect reticle topology: auto | single | quad");
        c->add_option("--placement", placement, "placement JSON written by `place`");
    }
    void add_run(CLI::App* c) {
        c->add_option("--config", config, "run configuration JSON");
        c->add_option("--seed", seed, "master seed");
        c->add_option("--selection", selection, "random | adaptive");
        c->add_flag("--json", json, "machine-readable output");
    }
};

bool given(const CLI::App* c, const char* name) {
    const CLI::Option* o = c->get_option_no_throw(name);
    return o && o->count() > 0;
}

RunConfig resolve(const Common& f, CLI::App* c) {
    RunConfig rc = f.config.empty() ? RunConfig{} : load_config_file(f.config);
    if (given(c, "--diameter"))
        rc.wafer.diameter_mm = f.diameter;
    if (given(c, "--utilization"))
        rc.wafer.utilization = parse_utilization(f.utilization);
    if (given(c, "--integration"))
        rc.wafer.integration = parse_integration(f.integration);
    if (given(c, "--scheme"))
        rc.scheme = parse_scheme(f.scheme);
    if (given(c, "--intra"))
        rc.intra = parse_intra_policy(f.intra);
    if (given(c, "--seed")) {
        rc.sim.seed = f.seed;
        rc.bisection.seed = f.seed;
        rc.measure.seeds = {f.seed, f.seed + 1, f.seed + 2};
    }
    if (given(c, "--selection"))
        rc.sim.selection = parse_selection(f.selection);
    if (rc.parallelism > 0)
        omp_set_num_threads(rc.parallelism);
    if (f.placement.empty())
        rc.validate();
    return rc;
}

Placement make_placement(const Common& f, const RunConfig& rc) {
    if (!f.placement.empty())
        return placement_from_json(read_file(f.placement));
    return generate_placement(rc.wafer, rc.scheme);
}

struct Built {
    Placement placement;
    NetworkGraph graph;
    RoutingTables tables;
};

Built build(const Common& f, const RunConfig& rc) {
    Built b;
    b.placement = make_placement(f, rc);
    b.graph = build_network(b.placement, rc.intra);
    b.tables = build_routing(b.graph);
    const auto audit = audit_routing(b.graph, b.tables);
    if (!audit.acyclic || !audit.complete || !audit.livelock_free)
        throw SimError("routing audit failed");
    return b;
}

int cmd_place(const Common& f, CLI::App* c, const std::string& out, const std::string& svg) {
    const RunConfig rc = resolve(f, c);
    const Placement p = generate_placement(rc.wafer, rc.scheme);
    if (!out.empty())
        write_file(out, placement_to_json(p));
    if (!svg.empty())
        write_file(svg, placement_to_svg(p));
    const int nc = p.count(ReticleKind::Compute), ni = p.count(ReticleKind::Interconnect);
    if (f.json) {
        json j{{"compute", nc}, {"interconnect", ni}, {"overlaps", p.overlaps.size()}, {"warnings", p.warnings}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "compute " << nc << "\ninterconnect " << ni << "\nconnectors " << p.overlaps.size() << "\n";
        for (const auto& w : p.warnings)
            std::cerr << "warning: " << w << "\n";
    }
    return kOk;
}

int cmd_metrics(const Common& f, CLI::App* c, const std::string& graph_out, const std::string& format) {
    const RunConfig rc = resolve(f, c);
    const Placement p = make_placement(f, rc);
    const NetworkGraph g = build_network(p, rc.intra);
    if (!graph_out.empty())
        write_file(graph_out, export_graph(g, parse_graph_format(format)));
    const MetricsReport m = reticle_metrics(g, rc.bisection);
    const bool pairs = g.endpoint_count() >= 2;
    const std::string label = to_string(p.spec.integration) + " " + fixed(p.spec.diameter_mm, 0) + " " +
                              to_string(p.spec.utilization) + " " + to_string(p.scheme);
    if (f.json) {
        json j{{"configuration", label},
               {"compute", m.compute_count},
               {"interconnect", m.interconnect_count},
               {"compute_radix", m.compute_radix},
               {"interconnect_radix", m.interconnect_radix}};
        j["diameter"] = pairs ? json(m.diameter_hops) : json(nullptr);
        j["avg_path_length"] = pairs ? json(round_to(m.avg_path_length_hops, 2)) : json(nullptr);
        j["bisection_tbps"] = pairs ? json(round_to(m.bisection_tbps, 2)) : json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "configuration,compute,interconnect,compute_radix,interconnect_radix,diameter,"
                     "avg_path_length,bisection_tbps\n"
                  << label << "," << m.compute_count << "," << m.interconnect_count << ","
                  << m.compute_radix << "," << m.interconnect_radix << ","
                  << (pairs ? std::to_string(m.diameter_hops) : "-") << ","
                  << (pairs ? fixed(m.avg_path_length_hops, 2) : "-") << ","
                  << (pairs ? fixed(m.bisection_tbps, 2) : "-") << "\n";
    }
    return kOk;
}

TrafficSpec traffic_from(RunConfig& rc, CLI::App* c, const std::string& pattern, double rate) {
    if (given(c, "--pattern"))
        rc.traffic.pattern = parse_pattern(pattern);
    if (given(c, "--rate"))
        rc.traffic.offered_rate = rate;
    if (!(rc.traffic.offered_rate > 0 && rc.traffic.offered_rate <= 1))
        throw DomainError("offered rate must be in (0, 1]");
    return rc.traffic;
}

int cmd_simulate(const Common& f, CLI::App* c, const std::string& pattern, double rate, long cycles,
                 bool audit, const std::string& log_path) {
    RunConfig rc = resolve(f, c);
    const TrafficSpec tr = traffic_from(rc, c, pattern, rate);
    if (given(c, "--cycles")) {
        rc.sim.measure_cycles = cycles;
        rc.sim.drain_cycle_cap = std::max(rc.sim.drain_cycle_cap, cycles + 1);
    }
    rc.sim.audit = rc.sim.audit || audit;
    const Built b = build(f, rc);
    std::ofstream log;
    if (!log_path.empty()) {
        log.open(log_path);
        if (!log)
            throw UsageError("cannot write " + log_path);
        rc.sim.event_log = &log;
    }
    const SimReport r = simulate(b.graph, b.tables, tr, rc.sim);
    const EnergyReport e = energy_report(r, rc.sim.energy, rc.sim.flit_bytes);
    if (f.json) {
        json j = json::parse(report_to_json(r));
        j["power_w"] = e.power_w;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "avg_packet_latency_cycles " << r.avg_packet_latency << "\n"
                  << "delivered_packets " << r.delivered_packets << "\n"
                  << "offered_rate " << r.offered_rate << "\n"
                  << "accepted_rate " << r.accepted_rate << "\n"
                  << "avg_hops " << r.avg_hops << "\n"
                  << "avg_pipeline_stages " << r.avg_pipeline_stages << "\n"
                  << "energy_per_byte_pj " << r.energy_per_byte_pj << "\n"
                  << "power_w " << e.power_w << "\n"
                  << "saturated_drain " << r.saturated_drain << "\n"
                  << "deadlock " << r.deadlock << "\n"
                  << "audit_violations " << r.audit_violations << "\n";
    }
    return r.deadlock || r.audit_violations > 0 ? kInvariant : kOk;
}

int cmd_sweep(const Common& f, CLI::App* c, const std::string& pattern, const std::vector<double>& rates,
              bool quick, const std::string& out) {
    RunConfig rc = resolve(f, c);
    const TrafficSpec tr = traffic_from(rc, c, pattern, rc.traffic.offered_rate);
    if (quick) {
        const auto seeds = rc.measure.seeds;
        rc.measure = MeasureOptions::quick();
        if (given(c, "--seed"))
            rc.measure.seeds = {seeds.front()};
    }
    const Built b = build(f, rc);
    SweepResult s;
    if (rates.empty()) {
        s = saturation_search(b.graph, b.tables, tr, rc.sim, rc.measure);
    } else {
        s.points = latency_sweep(b.graph, b.tables, tr, rc.sim, rates, rc.measure);
        s.zero_load_latency = zero_load_latency(b.graph, b.tables, tr, rc.sim, rc.measure);
        for (const auto& p : s.points)
            if (!p.saturated)
                s.saturation_rate = p.rate;
    }
    write_file(out, f.json ? sweep_to_json(s) + "\n" : sweep_to_csv(s));
    if (!out.empty() && out != "-")
        std::cerr << "zero_load_latency " << s.zero_load_latency << " saturation_rate " << s.saturation_rate
                  << (s.link_limited ? " link-limited" : "") << "\n";
    const auto bad = monotonicity_violations(s.points);
    if (!bad.empty()) {
        std::cerr << "latency decreased with load at " << bad.size() << " point(s)\n";
        return kInvariant;
    }
    return kOk;
}

int cmd_matrix(const Common& f, CLI::App* c, bool quick, const std::string& out,
               const std::vector<std::string>& patterns, const std::vector<std::string>& selections,
               const std::vector<std::string>& schemes, const std::vector<double>& diameters) {
    RunConfig rc = resolve(f, c);
    MatrixConfig m;
    m.sim = rc.sim;
    m.measure = quick ? MeasureOptions::quick() : rc.measure;
    if (quick && given(c, "--seed"))
        m.measure.seeds = {rc.sim.seed};
    m.intra = rc.intra;
    m.permutation_seed = rc.traffic.seed;
    if (!patterns.empty()) {
        m.patterns.clear();
        for (const auto& p : patterns)
            m.patterns.push_back(parse_pattern(p));
    }
    if (!selections.empty()) {
        m.selections.clear();
        for (const auto& s : selections)
            m.selections.push_back(parse_selection(s));
    }
    if (!schemes.empty()) {
        m.schemes.clear();
        for (const auto& s : schemes)
            m.schemes.push_back(parse_scheme(s));
    }
    if (!diameters.empty())
        m.diameters = diameters;
    const MatrixResult r = run_matrix(m, f.json ? nullptr : &std::cerr);
    write_matrix(r, out);
    if (f.json)
        std::cout << matrix_to_json(r) << "\n";
    else
        std::cout << matrix_to_csv(r);
    return r.failures() > 0 ? kInvariant : kOk;
}

int cmd_replay(const Common& f, CLI::App* c, const std::string& trace_path) {
    RunConfig rc = resolve(f, c);
    const Trace trace = parse_trace(read_file(trace_path));
    const Built b = build(f, rc);
    const ReplayReport r = replay_trace(b.graph, b.tables, trace, rc.sim);
    if (f.json) {
        json j = json::parse(report_to_json(r.sim));
        j["makespan_cycles"] = r.makespan;
        j["zero_load_latency_cycles"] = r.zero_load_latency;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "delivered_packets " << r.sim.delivered_packets << "\n"
                  << "makespan_cycles " << r.makespan << "\n"
                  << "avg_packet_latency_cycles " << r.sim.avg_packet_latency << "\n"
                  << "zero_load_latency_cycles " << r.zero_load_latency << "\n";
    }
    return r.sim.deadlock || r.sim.audit_violations > 0 ? kInvariant : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wafer-scale reticle placement and network evaluation"};
    app.require_subcommand(1);
    Common f;

    auto* place = app.add_subcommand("place", "generate a reticle placement");
    f.add_topology(place);
    f.add_run(place);
    std::string place_out, place_svg;
    place->add_option("--out", place_out, "placement JSON path");
    place->add_option("--svg", place_svg, "SVG rendering path");

    auto* metrics = app.add_subcommand("metrics", "counts, radices, diameter, path length, bisection");
    f.add_topology(metrics);
    f.add_run(metrics);
    std::string graph_out, graph_format = "json";
    metrics->add_option("--graph-out", graph_out, "export the network graph");
    metrics->add_option("--format", graph_format, "json | dot | dot-router");

    std::string pattern;
    double rate = 0;
    long cycles = 0;
    bool audit = false;
    std::string log_path;
    auto* sim = app.add_subcommand("simulate", "one simulation at a fixed offered rate");
    f.add_topology(sim);
    f.add_run(sim);
    sim->add_option("--pattern", pattern, "uniform | permutation | neighbor | tornado | hotspot");
    sim->add_option("--rate", rate, "offered flits per endpoint per cycle");
    sim->add_option("--cycles", cycles, "measurement window");
    sim->add_flag("--audit", audit, "check conservation and credit invariants every cycle");
    sim->add_option("--event-log", log_path, "per-cycle event log");

    std::vector<double> rates;
    bool quick = false;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "latency vs load; saturation search without --rates");
    f.add_topology(sweep);
    f.add_run(sweep);
    sweep->add_option("--pattern", pattern, "traffic pattern");
    sweep->add_option("--rates", rates, "explicit offered rates")->delimiter(',');
    sweep->add_flag("--quick", quick, "reduced cycle budget");
    sweep->add_option("--out", sweep_out, "output file (default stdout)");

    std::string matrix_out = "matrix_out";
    std::vector<std::string> patterns, selections, schemes;
    std::vector<double> diameters;
    auto* matrix = app.add_subcommand("matrix", "cross-product experiment with heatmaps");
    f.add_run(matrix);
    matrix->add_option("--intra", f.intra, "interconnect reticle topology");
    matrix->add_flag("--quick", quick, "reduced cycle budget");
    matrix->add_option("--out", matrix_out, "output directory");
    matrix->add_option("--patterns", patterns, "patterns")->delimiter(',');
    matrix->add_option("--selections", selections, "selection policies")->delimiter(',');
    matrix->add_option("--schemes", schemes, "schemes")->delimiter(',');
    matrix->add_option("--diameters", diameters, "wafer diameters")->delimiter(',');

    std::string trace_path;
    auto* replay = app.add_subcommand("replay", "replay a dependency trace");
    f.add_topology(replay);
    f.add_run(replay);
    replay->add_option("trace", trace_path, "trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }
    try {
        if (*place)
            return cmd_place(f, place, place_out, place_svg);
        if (*metrics)
            return cmd_metrics(f, metrics, graph_out, graph_format);
        if (*sim)
            return cmd_simulate(f, sim, pattern, rate, cycles, audit, log_path);
        if (*sweep)
            return cmd_sweep(f, sweep, pattern, rates, quick, sweep_out);
        if (*matrix)
            return cmd_matrix(f, matrix, quick, matrix_out, patterns, selections, schemes, diameters);
        if (*replay)
            return cmd_replay(f, replay, trace_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const TraceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kInvariant;
    }
    return kUsage;
}
