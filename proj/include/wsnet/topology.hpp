#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsnet/geometry.hpp"

namespace wsnet {

enum class RouterRole { ComputeHub, InterconnectSwitch };
enum class LinkKind { Vertical, Planar };

// Auto is the 4-switch full mesh for every scheme: one connector per switch on
// Baseline interconnect reticles, two on Aligned/Interleaved, 2/2/2/1 on
// Rotated. SingleSwitch collapses a reticle into one crossbar.
enum class IntraPolicy { Auto, SingleSwitch, QuadMesh };

IntraPolicy parse_intra_policy(const std::string& s);
std::string to_string(IntraPolicy p);

struct Router {
    int id = 0;
    int reticle_id = 0;
    RouterRole role = RouterRole::ComputeHub;
    Point position;
    int concentration = 0;

    friend bool operator==(const Router&, const Router&) = default;
};

struct Link {
    int id = 0;
    int src = 0;
    int dst = 0;
    LinkKind kind = LinkKind::Vertical;
    int latency_cycles = 1;
    int pipeline_stages = 0;
    double length_mm = 0;
    int reverse = -1;

    friend bool operator==(const Link&, const Link&) = default;
};

int planar_stages(double length_mm);

struct NetworkGraph {
    std::vector<Router> routers;
    std::vector<Link> links;
    std::vector<int> compute_endpoints;
    // Reticle level: every placed reticle, isolated ones have empty adjacency.
    std::vector<ReticleKind> reticle_kinds;
    std::vector<std::vector<int>> reticle_adjacency;

    // Derived indices, rebuilt by finalize().
    std::vector<std::vector<int>> out_links;
    std::vector<std::vector<int>> in_links;
    std::vector<int> endpoint_index;  // router id -> endpoint index or -1

    void add_link_pair(int a, int b, LinkKind kind, double length_mm);
    void finalize();
    int endpoint_count() const { return static_cast<int>(compute_endpoints.size()); }

    friend bool operator==(const NetworkGraph& a, const NetworkGraph& b) {
        return a.routers == b.routers && a.links == b.links &&
               a.compute_endpoints == b.compute_endpoints && a.reticle_kinds == b.reticle_kinds &&
               a.reticle_adjacency == b.reticle_adjacency;
    }
};

struct TopologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

NetworkGraph build_network(const Placement& placement, IntraPolicy policy = IntraPolicy::Auto);

struct MetricsReport {
    int compute_count = 0;
    int interconnect_count = 0;
    int compute_radix = 0;
    int interconnect_radix = 0;
    int diameter_hops = 0;
    double avg_path_length_hops = 0;
    double bisection_tbps = 0;
};

struct BisectionOptions {
    int runs = 10;
    uint64_t seed = 1;
    double link_tbps = 2.0;
    int starts_per_run = 8;
    bool count_connectors = true;
    bool parallel = true;
};

MetricsReport reticle_metrics(const NetworkGraph& g, const BisectionOptions& bisection = {});

// Hop distances from every compute reticle (rows) to every reticle.
std::vector<std::vector<int>> compute_distances(const NetworkGraph& g, bool parallel = true);
std::vector<std::vector<int>> compute_distances_serial(const NetworkGraph& g);

struct PathStats {
    int diameter = 0;
    double avg_path_length = 0;
};
PathStats compute_path_stats(const NetworkGraph& g, bool parallel = true);

// Undirected graph used by the partitioner; parallel edges appear as repeated
// adjacency entries.
struct SimpleGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;
};

SimpleGraph reticle_graph(const NetworkGraph& g, bool count_connectors = false);
int cut_size(const SimpleGraph& g, const std::vector<uint8_t>& side);
// One randomized greedy-growth + FM run; returns the side vector.
std::vector<uint8_t> balanced_bipartition(const SimpleGraph& g, uint64_t seed, int starts);
int exact_min_bisection(const SimpleGraph& g);
int exact_max_bisection(const SimpleGraph& g);

double bisection_estimate(const NetworkGraph& g, const BisectionOptions& opts = {});
double bisection_estimate(const SimpleGraph& g, const BisectionOptions& opts);
double bisection_estimate_serial(const SimpleGraph& g, const BisectionOptions& opts);

enum class GraphFormat { Json, DotReticle, DotRouter };
GraphFormat parse_graph_format(const std::string& s);
std::string export_graph(const NetworkGraph& g, GraphFormat format);
NetworkGraph load_graph(const std::string& json_text);

}  // namespace wsnet
