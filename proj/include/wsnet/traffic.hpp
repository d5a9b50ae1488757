#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnet/routing.hpp"
#include "wsnet/topology.hpp"

namespace wsnet {

// Hotspot sends every packet to one endpoint; it exists for capacity tests.
enum class Pattern { Uniform, Permutation, Neighbor, Tornado, Hotspot, Trace };

Pattern parse_pattern(const std::string& s);
std::string to_string(Pattern p);

struct TrafficSpec {
    Pattern pattern = Pattern::Uniform;
    double offered_rate = 0.1;  // flits per endpoint per cycle
    uint64_t seed = 1;          // permutation seed
    int hotspot = 0;            // destination endpoint for Hotspot
};

struct TrafficError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sattolo shuffle: a single n-cycle, hence a derangement.
std::vector<int> derangement(int n, uint64_t seed);
std::vector<int> neighbor_map(const std::vector<Point>& centers);
std::vector<int> tornado_map(const std::vector<Point>& centers);
std::vector<Point> endpoint_centers(const NetworkGraph& g);

class TrafficGenerator {
public:
    TrafficGenerator(const NetworkGraph& g, const TrafficSpec& spec);
    TrafficGenerator(const std::vector<Point>& centers, const TrafficSpec& spec);

    // Endpoint indices in, endpoint index out.
    int destination(int src, Rng& rng) const;
    bool injects(int src) const { return spec_.pattern != Pattern::Hotspot || src != spec_.hotspot; }
    int endpoints() const { return n_; }
    const TrafficSpec& spec() const { return spec_; }
    const std::vector<int>& fixed_map() const { return map_; }

private:
    TrafficSpec spec_;
    int n_ = 0;
    std::vector<int> map_;
};

struct TraceEvent {
    enum class Kind { Calc, Send, Recv };
    Kind kind = Kind::Calc;
    std::string label;
    long long bytes = 0;
    long long cycles = 0;
    int peer = -1;
    int tag = 0;
    std::vector<int> requires_;  // indices into the owning rank's events

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
    int num_ranks = 0;
    std::vector<std::vector<TraceEvent>> ranks;

    friend bool operator==(const Trace&, const Trace&) = default;
};

struct TraceError : std::runtime_error {
    TraceError(int line, const std::string& msg);
    explicit TraceError(const std::string& msg) : std::runtime_error(msg) {}
    int line = 0;
};

struct MessageMatch {
    int send_rank = 0, send_event = 0;
    int recv_rank = 0, recv_event = 0;
};

Trace parse_trace(const std::string& text);
std::string serialize_trace(const Trace& t);
// Throws TraceError on unmatched tags or byte mismatches.
std::vector<MessageMatch> match_messages(const Trace& t);
// Throws TraceError naming a cycle through requires arcs and message matches.
void check_acyclic(const Trace& t);

inline constexpr long long kTracePacketBytes = 2048;
long long packets_for_message(long long bytes);

}  // namespace wsnet
