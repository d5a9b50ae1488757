#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "wsnet/simnet.hpp"

namespace wsnet {

struct MeasureOptions {
    std::vector<uint64_t> seeds{1, 2, 3};
    bool parallel = true;
    double zero_load_rate = 0.001;
    long zero_load_packets = 10000;
    long target_packets = 5000;       // per probe and seed
    long max_measured_packets = 100000;
    long min_measure_cycles = 5000;
    long min_warmup_cycles = 5000;
    double threshold_factor = 2.0;
    std::vector<double> steps{0.1, 0.01, 0.001, 0.0001};

    static MeasureOptions quick();
};

struct SweepPoint {
    double rate = 0;
    SimReport report;  // seed-averaged
    double latency_min = 0, latency_max = 0;
    bool saturated = false;  // above threshold or failed to drain
};

struct SweepResult {
    std::vector<SweepPoint> points;  // rates strictly increasing
    double zero_load_latency = 0;
    double saturation_rate = 0;
    bool link_limited = false;
    SimReport saturation_report;
};

// Mean of scalar fields, sum of counts, union of flags.
SimReport merge_reports(const std::vector<SimReport>& reports);

// Window and warmup sized for one probe at `rate`.
SimConfig probe_config(const SimConfig& base, const MeasureOptions& o, int endpoints, double rate,
                       double zero_load_latency);

std::vector<SimReport> run_seeds(const NetworkGraph& g, const RoutingTables& t,
                                 const TrafficSpec& traffic, const SimConfig& cfg,
                                 const std::vector<uint64_t>& seeds, bool parallel);

double zero_load_latency(const NetworkGraph& g, const RoutingTables& t, const TrafficSpec& traffic,
                         const SimConfig& cfg, const MeasureOptions& o = {});

SweepPoint probe(const NetworkGraph& g, const RoutingTables& t, const TrafficSpec& traffic,
                 const SimConfig& cfg, const MeasureOptions& o, double rate, double zero_load);

SweepResult saturation_search(const NetworkGraph& g, const RoutingTables& t,
                              const TrafficSpec& traffic, const SimConfig& cfg,
                              const MeasureOptions& o = {});
// Same search driven by an arbitrary latency oracle; used to test the refinement.
template <class LatencyAt>
double refine_saturation(LatencyAt&& latency_at, double threshold,
                         const std::vector<double>& steps, std::vector<double>* probed = nullptr);

std::vector<SweepPoint> latency_sweep(const NetworkGraph& g, const RoutingTables& t,
                                      const TrafficSpec& traffic, const SimConfig& cfg,
                                      const std::vector<double>& rates,
                                      const MeasureOptions& o = {});
// Points where latency drops by more than `tolerance` relative to an earlier
// unsaturated point.
std::vector<int> monotonicity_violations(const std::vector<SweepPoint>& sweep,
                                         double tolerance = 0.05);

struct EnergyReport {
    double link_pj_per_flit = 0;
    double router_pj_per_flit = 0;
    double pj_per_flit = 0;
    double energy_per_byte_pj = 0;
    double power_w = 0;  // at the report's accepted throughput, 1 GHz clock
};

EnergyReport energy_report(const SimReport& r, const EnergyModel& model, int flit_bytes,
                           double clock_hz = 1e9);

std::string sweep_to_csv(const SweepResult& s);
std::string sweep_to_json(const SweepResult& s);

template <class LatencyAt>
double refine_saturation(LatencyAt&& latency_at, double threshold,
                         const std::vector<double>& steps, std::vector<double>* probed) {
    // Rates are handled in integer units of the finest step to keep the probe
    // sequence exact.
    const double unit = steps.back();
    const long top = static_cast<long>(1.0 / unit + 0.5);
    long base = 0;
    std::vector<long> crossed;
    for (double s : steps) {
        const long inc = static_cast<long>(s / unit + 0.5);
        for (long r = base + inc; r <= top; r += inc) {
            bool over = false;
            if (std::find(crossed.begin(), crossed.end(), r) != crossed.end()) {
                over = true;
            } else {
                const double rate = static_cast<double>(r) * unit;
                if (probed)
                    probed->push_back(rate);
                over = latency_at(rate) > threshold;
            }
            if (over) {
                crossed.push_back(r);
                break;
            }
            base = r;
        }
    }
    return static_cast<double>(base) * unit;
}

}  // namespace wsnet
