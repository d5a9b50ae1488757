#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnet/routing.hpp"
#include "wsnet/topology.hpp"
#include "wsnet/traffic.hpp"

namespace wsnet {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnergyModel {
    double pj_per_bit_per_stage = 2.0;
    double router_energy_pj_per_flit = 0.0;
    void validate() const;
};

struct SimConfig {
    int buffer_depth_flits = 32;
    int router_latency_cycles = 4;
    int vcs_per_channel = 1;
    int flit_bytes = 2000;
    int packet_flits = 4;
    int source_queue_packets = 16;
    long warmup_cycles = 5000;
    long measure_cycles = 20000;
    long drain_cycle_cap = 100000;
    long watchdog_cycles = 10000;
    uint64_t seed = 1;
    SelectionKind selection = SelectionKind::Random;
    EnergyModel energy;
    bool audit = false;
    std::ostream* event_log = nullptr;

    void validate() const;
};

struct PacketRecord {
    long id = 0;
    int src = 0, dst = 0;  // endpoint indices
    int flits = 0;
    long injection_cycle = 0;
    long head_departure = -1;
    long tail_arrival = -1;
    int hops = 0;
    int pipeline_stages = 0;
    int link_latency_sum = 0;
    bool measured = false;
    long user = -1;

    long latency() const { return tail_arrival - injection_cycle; }
    friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

// Idle-network latency of a packet: every router on the path (source and
// destination included) costs router_latency, links cost their latency and
// the body follows the head one cycle apart.
long idle_latency(int hops, int link_latency_sum, int flits, int router_latency);

struct SimReport {
    double avg_packet_latency = 0;
    double avg_network_latency = 0;  // head departure to tail arrival
    long min_latency = 0, max_latency = 0;
    int histogram_bin_cycles = 8;
    std::vector<long> latency_histogram;
    long delivered_packets = 0;
    long measured_packets = 0;
    double offered_rate = 0;   // flits per endpoint per cycle
    double accepted_rate = 0;  // flits admitted to source queues per endpoint per cycle
    double delivered_rate = 0;
    double avg_hops = 0;
    double avg_pipeline_stages = 0;
    double energy_j = 0;
    double energy_per_byte_pj = 0;
    std::vector<double> link_utilization;
    long cycles = 0;
    int endpoints = 0;  // injecting endpoints the rates are normalized by
    bool saturated_drain = false;
    bool deadlock = false;
    long audit_violations = 0;

    friend bool operator==(const SimReport&, const SimReport&) = default;
};

std::string report_to_json(const SimReport& r, bool include_links = false);

// Cycle-accurate core shared by synthetic simulation and trace replay.
class Simulator {
public:
    Simulator(const NetworkGraph& g, const RoutingTables& t, const SimConfig& cfg);

    long enqueue(int src, int dst, int flits, bool measured, long user = -1);
    int source_queue_size(int src) const { return static_cast<int>(source_[src].size()); }
    void step();
    long now() const { return now_; }
    // No packet queued or in the network.
    bool empty() const { return in_network_ == 0 && queued_packets_ == 0; }
    // Jump the clock forward; only legal while empty().
    void skip_to(long cycle);
    std::vector<long> take_delivered();
    const PacketRecord& packet(long id) const { return packets_[id]; }
    const std::vector<PacketRecord>& packets() const { return packets_; }
    long last_progress() const { return last_progress_; }
    long flits_in_network() const { return in_network_; }
    long audit_violations() const { return violations_; }
    // Flits forwarded per link, counted from reset_link_counters().
    const std::vector<long>& link_flits() const { return link_flits_; }
    void reset_link_counters();
    // Throws SimError if a conservation or credit invariant is broken.
    void audit() const;

private:
    struct Flit {
        long packet;
        int seq;
        long arrival;
    };
    struct Event {
        int link;
        long packet;  // -1 for a credit
        int seq;
    };
    void deliver_events();
    void inject();
    void traverse();
    void route_head(int router, int port, const Flit& f);

    const NetworkGraph& g_;
    const RoutingTables& t_;
    SimConfig cfg_;
    int nl_ = 0, ne_ = 0;
    long now_ = 0;
    std::vector<PacketRecord> packets_;
    std::vector<std::deque<long>> source_;
    std::vector<int> next_seq_;  // per endpoint, next flit of the head packet
    std::vector<std::deque<Flit>> in_;  // links then injection ports
    std::vector<int> route_;            // chosen output per input, -1 none
    std::vector<char> allocated_;
    std::vector<int> owner_;            // per output: links then ejection ports
    std::vector<long> stamp_;
    std::vector<int> credits_;
    std::vector<int> expect_seq_;  // ejection wormhole integrity
    std::vector<std::vector<int>> inputs_of_;
    std::vector<int> rr_;
    std::vector<int> occupancy_;
    std::vector<char> active_flag_;
    std::vector<int> active_;
    std::vector<std::vector<Event>> wheel_;
    long wheel_mask_ = 0;
    std::vector<int> flits_on_link_, credits_on_link_;
    std::vector<long> link_flits_;
    std::vector<long> delivered_;
    long in_network_ = 0, queued_packets_ = 0;
    long injected_flits_ = 0, ejected_flits_ = 0, buffered_ = 0, on_links_ = 0;
    long last_progress_ = 0;
    long violations_ = 0;
    Rng sel_rng_;
};

SimReport simulate(const NetworkGraph& g, const RoutingTables& t, const TrafficSpec& traffic,
                   const SimConfig& cfg);

struct ReplayReport {
    SimReport sim;
    long makespan = 0;
    double zero_load_latency = 0;  // idle latency along the paths actually taken
    std::vector<std::vector<long>> event_start, event_end;
    // Packet ids per send event (empty for calc/recv).
    std::vector<std::vector<std::vector<long>>> send_packets;
    std::vector<PacketRecord> packets;
};

ReplayReport replay_trace(const NetworkGraph& g, const RoutingTables& t, const Trace& trace,
                          const SimConfig& cfg);

}  // namespace wsnet
