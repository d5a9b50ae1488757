#include <algorithm>
#include <queue>

#include "wsnet/topology.hpp"

namespace wsnet {

namespace {

std::vector<int> compute_reticles(const NetworkGraph& g) {
    std::vector<int> out;
    for (size_t r = 0; r < g.reticle_kinds.size(); ++r)
        if (g.reticle_kinds[r] == ReticleKind::Compute)
            out.push_back(static_cast<int>(r));
    return out;
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int s) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

}  // namespace

std::vector<std::vector<int>> compute_distances_serial(const NetworkGraph& g) {
    const std::vector<int> cs = compute_reticles(g);
    std::vector<std::vector<int>> out(cs.size());
    for (size_t i = 0; i < cs.size(); ++i)
        out[i] = bfs(g.reticle_adjacency, cs[i]);
    return out;
}

std::vector<std::vector<int>> compute_distances(const NetworkGraph& g, bool parallel) {
    if (!parallel)
        return compute_distances_serial(g);
    const std::vector<int> cs = compute_reticles(g);
    std::vector<std::vector<int>> out(cs.size());
    const int n = static_cast<int>(cs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i)
        out[i] = bfs(g.reticle_adjacency, cs[i]);
    return out;
}

// Average over all ordered compute pairs, self pairs included (n^2 terms).
PathStats compute_path_stats(const NetworkGraph& g, bool parallel) {
    const std::vector<int> cs = compute_reticles(g);
    const auto dist = compute_distances(g, parallel);
    PathStats st;
    if (cs.empty())
        return st;
    long long total = 0;
    for (size_t i = 0; i < cs.size(); ++i)
        for (int t : cs) {
            const int d = dist[i][t];
            if (d < 0)
                throw TopologyError("compute reticles " + std::to_string(cs[i]) + " and " +
                                    std::to_string(t) + " are disconnected");
            total += d;
            st.diameter = std::max(st.diameter, d);
        }
    st.avg_path_length = static_cast<double>(total) / (static_cast<double>(cs.size()) * cs.size());
    return st;
}

MetricsReport reticle_metrics(const NetworkGraph& g, const BisectionOptions& bisection) {
    MetricsReport m;
    std::vector<int> connectors(g.reticle_kinds.size(), 0);
    for (const Link& l : g.links)
        if (l.kind == LinkKind::Vertical)
            ++connectors[g.routers[l.src].reticle_id];
    for (size_t r = 0; r < g.reticle_kinds.size(); ++r) {
        const int degree = static_cast<int>(g.reticle_adjacency[r].size());
        if (g.reticle_kinds[r] == ReticleKind::Compute) {
            ++m.compute_count;
            m.compute_radix = std::max(m.compute_radix, connectors[r]);
        } else {
            ++m.interconnect_count;
            m.interconnect_radix = std::max(m.interconnect_radix, degree);
        }
    }
    const PathStats ps = compute_path_stats(g, bisection.parallel);
    m.diameter_hops = ps.diameter;
    m.avg_path_length_hops = ps.avg_path_length;
    if (bisection.runs > 0 && m.compute_count + m.interconnect_count >= 2)
        m.bisection_tbps = bisection_estimate(g, bisection);
    return m;
}

}  // namespace wsnet
