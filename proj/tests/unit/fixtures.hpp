#pragma once

#include <queue>
#include <random>
#include <vector>

#include "wsnet/topology.hpp"

namespace fx {

using namespace wsnet;

inline int add_router(NetworkGraph& g, RouterRole role, Point at = {}) {
    const int id = static_cast<int>(g.routers.size());
    g.routers.push_back({id, id, role, at, role == RouterRole::ComputeHub ? 1 : 0});
    g.reticle_kinds.push_back(role == RouterRole::ComputeHub ? ReticleKind::Compute
                                                             : ReticleKind::Interconnect);
    g.reticle_adjacency.emplace_back();
    if (role == RouterRole::ComputeHub)
        g.compute_endpoints.push_back(id);
    return id;
}

inline void connect(NetworkGraph& g, int a, int b, LinkKind kind = LinkKind::Vertical,
                    double len = 0) {
    g.add_link_pair(a, b, kind, len);
    g.reticle_adjacency[a].push_back(b);
    g.reticle_adjacency[b].push_back(a);
}

inline NetworkGraph two_hubs() {
    NetworkGraph g;
    add_router(g, RouterRole::ComputeHub);
    add_router(g, RouterRole::ComputeHub, {10, 0});
    connect(g, 0, 1);
    g.finalize();
    return g;
}

inline NetworkGraph ring(int n) {
    NetworkGraph g;
    for (int i = 0; i < n; ++i)
        add_router(g, RouterRole::ComputeHub, {double(i), 0});
    for (int i = 0; i < n; ++i)
        connect(g, i, (i + 1) % n);
    g.finalize();
    return g;
}

inline NetworkGraph path(int n) {
    NetworkGraph g;
    for (int i = 0; i < n; ++i)
        add_router(g, RouterRole::ComputeHub, {double(i), 0});
    for (int i = 0; i + 1 < n; ++i)
        connect(g, i, i + 1);
    g.finalize();
    return g;
}

// Random tree mixing hubs and switches, planar links of random length.
inline NetworkGraph random_tree(std::mt19937_64& rng) {
    NetworkGraph g;
    const int n = std::uniform_int_distribution<int>(2, 9)(rng);
    for (int i = 0; i < n; ++i) {
        const bool hub = i < 2 || std::bernoulli_distribution(0.6)(rng);
        add_router(g, hub ? RouterRole::ComputeHub : RouterRole::InterconnectSwitch,
                   {double(i), double(i % 3)});
    }
    for (int i = 1; i < n; ++i) {
        const int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
        if (std::bernoulli_distribution(0.5)(rng))
            connect(g, parent, i);
        else
            connect(g, parent, i, LinkKind::Planar,
                    std::uniform_real_distribution<double>(0.5, 30.0)(rng));
    }
    g.finalize();
    return g;
}

// k sources share one long link towards a single sink.
//   s_i -- A ==== B -- sink
inline NetworkGraph bottleneck(int k, double len_mm = 20.0) {
    NetworkGraph g;
    const int a = add_router(g, RouterRole::InterconnectSwitch, {0, 0});
    const int b = add_router(g, RouterRole::InterconnectSwitch, {len_mm, 0});
    const int sink = add_router(g, RouterRole::ComputeHub, {len_mm + 1, 0});
    connect(g, a, b, LinkKind::Planar, len_mm);
    connect(g, b, sink);
    for (int i = 0; i < k; ++i)
        connect(g, add_router(g, RouterRole::ComputeHub, {-1, double(i)}), a);
    g.finalize();
    return g;
}

inline int sink_endpoint(const NetworkGraph& g) { return g.endpoint_index[2]; }

// Router-level BFS hop counts, independent of the library.
inline std::vector<std::vector<int>> router_bfs(const NetworkGraph& g) {
    const int n = static_cast<int>(g.routers.size());
    std::vector<std::vector<int>> adj(n);
    for (const Link& l : g.links)
        adj[l.src].push_back(l.dst);
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        q.push(s);
        d[s][s] = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (d[s][v] < 0) {
                    d[s][v] = d[s][u] + 1;
                    q.push(v);
                }
        }
    }
    return d;
}

}  // namespace fx
