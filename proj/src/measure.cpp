#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "wsnet/measure.hpp"

namespace wsnet {

MeasureOptions MeasureOptions::quick() {
    MeasureOptions o;
    o.seeds = {1};
    o.zero_load_packets = 1000;
    o.target_packets = 800;
    o.min_measure_cycles = 1000;
    o.min_warmup_cycles = 1000;
    return o;
}

SimReport merge_reports(const std::vector<SimReport>& rs) {
    SimReport m;
    if (rs.empty())
        return m;
    const double n = static_cast<double>(rs.size());
    m.min_latency = rs[0].min_latency;
    m.histogram_bin_cycles = rs[0].histogram_bin_cycles;
    m.endpoints = rs[0].endpoints;
    for (const auto& r : rs) {
        m.avg_packet_latency += r.avg_packet_latency / n;
        m.avg_network_latency += r.avg_network_latency / n;
        m.offered_rate += r.offered_rate / n;
        m.accepted_rate += r.accepted_rate / n;
        m.delivered_rate += r.delivered_rate / n;
        m.avg_hops += r.avg_hops / n;
        m.avg_pipeline_stages += r.avg_pipeline_stages / n;
        m.energy_j += r.energy_j / n;
        m.energy_per_byte_pj += r.energy_per_byte_pj / n;
        m.min_latency = std::min(m.min_latency, r.min_latency);
        m.max_latency = std::max(m.max_latency, r.max_latency);
        m.delivered_packets += r.delivered_packets;
        m.measured_packets += r.measured_packets;
        m.cycles = std::max(m.cycles, r.cycles);
        m.saturated_drain = m.saturated_drain || r.saturated_drain;
        m.deadlock = m.deadlock || r.deadlock;
        m.audit_violations += r.audit_violations;
        if (m.latency_histogram.size() < r.latency_histogram.size())
            m.latency_histogram.resize(r.latency_histogram.size(), 0);
        for (size_t i = 0; i < r.latency_histogram.size(); ++i)
            m.latency_histogram[i] += r.latency_histogram[i];
        if (m.link_utilization.size() < r.link_utilization.size())
            m.link_utilization.resize(r.link_utilization.size(), 0);
        for (size_t i = 0; i < r.link_utilization.size(); ++i)
            m.link_utilization[i] += r.link_utilization[i] / n;
    }
    return m;
}

SimConfig probe_config(const SimConfig& base, const MeasureOptions& o, int endpoints, double rate,
                       double zll) {
    SimConfig c = base;
    c.warmup_cycles = std::max(o.min_warmup_cycles, static_cast<long>(std::ceil(3 * zll)));
    const double per_cycle = endpoints * rate / base.packet_flits;
    const long want = static_cast<long>(std::ceil(static_cast<double>(o.target_packets) / per_cycle));
    const long cap = static_cast<long>(static_cast<double>(o.max_measured_packets) / per_cycle);
    c.measure_cycles = std::max(o.min_measure_cycles, std::min(want, cap));
    c.drain_cycle_cap = c.measure_cycles + 20000;
    return c;
}

std::vector<SimReport> run_seeds(const NetworkGraph& g, const RoutingTables& t,
                                 const TrafficSpec& traffic, const SimConfig& cfg,
                                 const std::vector<uint64_t>& seeds, bool parallel) {
    const int n = static_cast<int>(seeds.size());
    std::vector<SimReport> out(n);
    std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n; ++i) {
        SimConfig c = cfg;
        c.seed = seeds[i];
        c.event_log = nullptr;
        try {
            out[i] = simulate(g, t, traffic, c);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty())
            throw SimError(e);
    return out;
}

double zero_load_latency(const NetworkGraph& g, const RoutingTables& t, const TrafficSpec& traffic,
                         const SimConfig& cfg, const MeasureOptions& o) {
    TrafficSpec tr = traffic;
    tr.offered_rate = o.zero_load_rate;
    const int n = g.endpoint_count() - (traffic.pattern == Pattern::Hotspot ? 1 : 0);
    const size_t k = std::max<size_t>(1, o.seeds.size());
    SimConfig c = cfg;
    c.warmup_cycles = o.min_warmup_cycles;
    const double per_cycle = n * tr.offered_rate / cfg.packet_flits;
    c.measure_cycles = static_cast<long>(
        std::ceil(1.05 * static_cast<double>(o.zero_load_packets) / static_cast<double>(k) / per_cycle));
    c.drain_cycle_cap = c.measure_cycles + 20000;
    const auto rs = run_seeds(g, t, tr, c, o.seeds.empty() ? std::vector<uint64_t>{cfg.seed} : o.seeds,
                              o.parallel);
    double sum = 0;
    long cnt = 0;
    for (const auto& r : rs) {
        sum += r.avg_packet_latency * static_cast<double>(r.delivered_packets);
        cnt += r.delivered_packets;
    }
    return cnt ? sum / static_cast<double>(cnt) : 0.0;
}

SweepPoint probe(const NetworkGraph& g, const RoutingTables& t, const TrafficSpec& traffic,
                 const SimConfig& cfg, const MeasureOptions& o, double rate, double zll) {
    TrafficSpec tr = traffic;
    tr.offered_rate = rate;
    const int n = g.endpoint_count() - (traffic.pattern == Pattern::Hotspot ? 1 : 0);
    const SimConfig c = probe_config(cfg, o, n, rate, zll);
    const auto rs = run_seeds(g, t, tr, c, o.seeds.empty() ? std::vector<uint64_t>{cfg.seed} : o.seeds,
                              o.parallel);
    SweepPoint p;
    p.rate = rate;
    p.report = merge_reports(rs);
    p.latency_min = std::numeric_limits<double>::infinity();
    p.latency_max = 0;
    for (const auto& r : rs) {
        p.latency_min = std::min(p.latency_min, r.avg_packet_latency);
        p.latency_max = std::max(p.latency_max, r.avg_packet_latency);
    }
    p.saturated = p.report.saturated_drain || p.report.deadlock ||
                  (zll > 0 && p.report.avg_packet_latency > o.threshold_factor * zll);
    return p;
}

SweepResult saturation_search(const NetworkGraph& g, const RoutingTables& t,
                              const TrafficSpec& traffic, const SimConfig& cfg,
                              const MeasureOptions& o) {
    SweepResult res;
    res.zero_load_latency = zero_load_latency(g, t, traffic, cfg, o);
    const double threshold = o.threshold_factor * res.zero_load_latency;
    std::map<long, SweepPoint> points;
    const double unit = o.steps.back();
    auto latency_at = [&](double rate) {
        SweepPoint p = probe(g, t, traffic, cfg, o, rate, res.zero_load_latency);
        const double lat = p.report.saturated_drain || p.report.deadlock
                               ? std::numeric_limits<double>::infinity()
                               : p.report.avg_packet_latency;
        points[std::lround(rate / unit)] = p;
        return lat;
    };
    res.saturation_rate = refine_saturation(latency_at, threshold, o.steps);
    res.link_limited = std::abs(res.saturation_rate - 1.0) < unit / 2;
    for (auto& [k, p] : points)
        res.points.push_back(p);
    if (auto it = points.find(std::lround(res.saturation_rate / unit)); it != points.end())
        res.saturation_report = it->second.report;
    return res;
}

std::vector<SweepPoint> latency_sweep(const NetworkGraph& g, const RoutingTables& t,
                                      const TrafficSpec& traffic, const SimConfig& cfg,
                                      const std::vector<double>& rates, const MeasureOptions& o) {
    std::vector<double> rs = rates;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    const double zll = zero_load_latency(g, t, traffic, cfg, o);
    std::vector<SweepPoint> out;
    for (double r : rs)
        out.push_back(probe(g, t, traffic, cfg, o, r, zll));
    return out;
}

std::vector<int> monotonicity_violations(const std::vector<SweepPoint>& sweep, double tolerance) {
    std::vector<int> bad;
    double best = 0;
    for (int i = 0; i < static_cast<int>(sweep.size()); ++i) {
        const auto& p = sweep[i];
        if (p.saturated || p.report.saturated_drain || p.report.deadlock)
            break;
        const double l = p.report.avg_packet_latency;
        if (l < best * (1 - tolerance))
            bad.push_back(i);
        best = std::max(best, l);
    }
    return bad;
}

EnergyReport energy_report(const SimReport& r, const EnergyModel& m, int flit_bytes, double clock_hz) {
    EnergyReport e;
    e.link_pj_per_flit = flit_bytes * 8.0 * m.pj_per_bit_per_stage * r.avg_pipeline_stages;
    e.router_pj_per_flit = m.router_energy_pj_per_flit * r.avg_hops;
    e.pj_per_flit = e.link_pj_per_flit + e.router_pj_per_flit;
    e.energy_per_byte_pj = e.pj_per_flit / flit_bytes;
    e.power_w = e.pj_per_flit * 1e-12 * r.accepted_rate * r.endpoints * clock_hz;
    return e;
}

std::string sweep_to_csv(const SweepResult& s) {
    std::ostringstream o;
    o << "offered_rate,latency_mean,latency_min,latency_max,accepted_rate,delivered_rate,avg_hops,"
         "avg_pipeline_stages,energy_per_byte_pj,saturated\n";
    for (const auto& p : s.points)
        o << p.rate << "," << p.report.avg_packet_latency << "," << p.latency_min << ","
          << p.latency_max << "," << p.report.accepted_rate << "," << p.report.delivered_rate << ","
          << p.report.avg_hops << "," << p.report.avg_pipeline_stages << ","
          << p.report.energy_per_byte_pj << "," << (p.saturated ? 1 : 0) << "\n";
    return o.str();
}

std::string sweep_to_json(const SweepResult& s) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "sweep";
    j["zero_load_latency_cycles"] = s.zero_load_latency;
    j["saturation_rate"] = s.saturation_rate;
    j["link_limited"] = s.link_limited;
    j["saturation_report"] = nlohmann::json::parse(report_to_json(s.saturation_report));
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : s.points)
        pts.push_back({{"offered_rate", p.rate},
                       {"latency_mean", p.report.avg_packet_latency},
                       {"latency_min", p.latency_min},
                       {"latency_max", p.latency_max},
                       {"accepted_rate", p.report.accepted_rate},
                       {"saturated", p.saturated},
                       {"report", nlohmann::json::parse(report_to_json(p.report))}});
    return j.dump(2);
}

}  // namespace wsnet
