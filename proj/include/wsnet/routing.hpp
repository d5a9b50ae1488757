#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsnet/topology.hpp"

namespace wsnet {

struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sp[router][endpoint] -> links (u->v) with dist(v, dest) = dist(u, dest) - 1.
using PortMap = std::vector<std::vector<std::vector<int>>>;

PortMap shortest_path_ports(const NetworkGraph& g);
// Hop distance from every router to every compute endpoint: dist[endpoint][router].
std::vector<std::vector<int>> router_distances(const NetworkGraph& g);

enum class RoutingMode { ShortestPath, PartialFallback, UpDown };

class RoutingTables {
public:
    // Output links a packet for `dest` (endpoint index) may take at `router`
    // having arrived over `in_link` (-1 at injection).
    std::vector<int> ports(const NetworkGraph& g, int router, int in_link, int dest) const;
    // Links permitted at injection, the per-(router, destination) entry.
    std::vector<int> entry(const NetworkGraph& g, int router, int dest) const {
        return ports(g, router, -1, dest);
    }
    bool turn_prohibited(int in_link, int out_link) const;

    RoutingMode mode = RoutingMode::ShortestPath;
    std::vector<std::pair<int, int>> prohibited;  // sorted (in_link, out_link)
    // cost[dest][link]: hops remaining after traversing link, -1 if the link
    // must not be used towards dest.
    std::vector<std::vector<int>> cost;
    int updown_root = -1;
    double fallback_fraction = 0;  // compute pairs routed longer than shortest
    int greedy_iterations = 0;

    void index_prohibited();

private:
    std::vector<std::vector<int>> prohibited_by_in_;
};

struct CycleBreakOptions {
    bool force_fallback = false;
    int max_candidates_per_iteration = 16;
    // Greedy passes with reseeded tie-breaks before global up*/down*.
    int attempts = 4;
};

RoutingTables break_cycles(const NetworkGraph& g, const PortMap& sp,
                           const CycleBreakOptions& opts = {});
RoutingTables build_routing(const NetworkGraph& g, const CycleBreakOptions& opts = {});

// Channel dependency arcs (in_link, out_link) actually produced by the tables.
std::vector<std::pair<int, int>> dependency_arcs(const NetworkGraph& g, const RoutingTables& t);
bool is_acyclic(int num_links, const std::vector<std::pair<int, int>>& arcs);

struct RoutingAudit {
    bool acyclic = false;
    bool complete = false;
    bool livelock_free = false;
    long unroutable_pairs = 0;
    long non_decreasing_steps = 0;
};
RoutingAudit audit_routing(const NetworkGraph& g, const RoutingTables& t);

enum class SelectionKind { Random, Adaptive };
struct SelectionPolicy {
    SelectionKind kind = SelectionKind::Random;
    uint64_t seed = 1;
};
SelectionKind parse_selection(const std::string& s);
std::string to_string(SelectionKind k);

using Rng = std::mt19937_64;

// credits: free downstream slots indexed by link id.
int select_port(SelectionKind kind, std::span<const int> permitted, std::span<const int> credits,
                Rng& rng);

std::string routing_to_json(const NetworkGraph& g, const RoutingTables& t);

}  // namespace wsnet
