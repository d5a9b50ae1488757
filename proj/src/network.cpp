#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "wsnet/topology.hpp"

namespace wsnet {

IntraPolicy parse_intra_policy(const std::string& s) {
    if (s == "auto") return IntraPolicy::Auto;
    if (s == "single") return IntraPolicy::SingleSwitch;
    if (s == "quad") return IntraPolicy::QuadMesh;
    throw DomainError("unknown intra-reticle policy: " + s);
}

std::string to_string(IntraPolicy p) {
    switch (p) {
    case IntraPolicy::Auto: return "auto";
    case IntraPolicy::SingleSwitch: return "single";
    case IntraPolicy::QuadMesh: return "quad";
    }
    return "?";
}

int planar_stages(double length_mm) {
    if (length_mm <= kGeomEps)
        return 0;
    return static_cast<int>(std::ceil(length_mm / 2.0 - 1e-9));
}

void NetworkGraph::add_link_pair(int a, int b, LinkKind kind, double length_mm) {
    const int stages = kind == LinkKind::Vertical ? 0 : planar_stages(length_mm);
    const int latency = kind == LinkKind::Vertical ? 1 : stages + 1;
    const int id = static_cast<int>(links.size());
    links.push_back({id, a, b, kind, latency, stages, length_mm, id + 1});
    links.push_back({id + 1, b, a, kind, latency, stages, length_mm, id});
}

void NetworkGraph::finalize() {
    out_links.assign(routers.size(), {});
    in_links.assign(routers.size(), {});
    for (const Link& l : links) {
        out_links[l.src].push_back(l.id);
        in_links[l.dst].push_back(l.id);
    }
    endpoint_index.assign(routers.size(), -1);
    for (size_t i = 0; i < compute_endpoints.size(); ++i)
        endpoint_index[compute_endpoints[i]] = static_cast<int>(i);
}

namespace {

struct Connector {
    int compute_reticle;
    Point at;
};

void check_connected(const NetworkGraph& g) {
    const int n = static_cast<int>(g.routers.size());
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        std::queue<int> q;
        q.push(s);
        comp[s] = ncomp;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int l : g.out_links[u])
                if (comp[g.links[l].dst] < 0) {
                    comp[g.links[l].dst] = ncomp;
                    q.push(g.links[l].dst);
                }
        }
        ++ncomp;
    }
    if (ncomp <= 1)
        return;
    std::map<int, std::vector<int>> members;
    for (int r : g.compute_endpoints)
        members[comp[r]].push_back(g.routers[r].reticle_id);
    std::ostringstream os;
    os << "network is disconnected into " << ncomp << " components;";
    for (auto& [c, rs] : members) {
        os << " {";
        for (size_t i = 0; i < rs.size(); ++i)
            os << (i ? "," : "") << rs[i];
        os << "}";
    }
    throw TopologyError(os.str());
}

}  // namespace

NetworkGraph build_network(const Placement& placement, IntraPolicy policy) {
    if (placement.reticles.empty())
        throw TopologyError("placement is empty");
    if (placement.overlaps.empty() && placement.reticles.size() > 1)
        throw TopologyError("placement has no overlaps");
    const bool lol = placement.spec.integration == Integration::LogicOnLogic;
    if (policy == IntraPolicy::Auto)
        policy = IntraPolicy::QuadMesh;
    NetworkGraph g;
    const int nret = static_cast<int>(placement.reticles.size());
    g.reticle_kinds.resize(nret);
    g.reticle_adjacency.assign(nret, {});
    std::vector<int> hub(nret, -1);
    for (const PlacedReticle& r : placement.reticles) {
        g.reticle_kinds[r.id] = r.kind;
        if (r.kind != ReticleKind::Compute)
            continue;
        const int id = static_cast<int>(g.routers.size());
        g.routers.push_back({id, r.id, RouterRole::ComputeHub, r.center, 1});
        g.compute_endpoints.push_back(id);
        hub[r.id] = id;
    }

    std::set<std::pair<int, int>> adj;
    for (const OverlapRecord& o : placement.overlaps)
        adj.insert({std::min(o.top_id, o.bottom_id), std::max(o.top_id, o.bottom_id)});
    for (auto [a, b] : adj) {
        g.reticle_adjacency[a].push_back(b);
        g.reticle_adjacency[b].push_back(a);
    }
    for (auto& v : g.reticle_adjacency)
        std::sort(v.begin(), v.end());

    if (lol) {
        for (const OverlapRecord& o : placement.overlaps)
            for (int m = 0; m < o.multiplicity; ++m)
                g.add_link_pair(hub[o.top_id], hub[o.bottom_id], LinkKind::Vertical, 0.0);
        g.finalize();
        check_connected(g);
        return g;
    }

    std::vector<std::vector<Connector>> per_ic(nret);
    for (const OverlapRecord& o : placement.overlaps) {
        const bool top_is_ic = placement.reticle(o.top_id).kind == ReticleKind::Interconnect;
        const int ic = top_is_ic ? o.top_id : o.bottom_id;
        const int cr = top_is_ic ? o.bottom_id : o.top_id;
        for (int m = 0; m < o.multiplicity; ++m)
            per_ic[ic].push_back({cr, o.centroid});
    }
    for (int ic = 0; ic < nret; ++ic) {
        std::vector<Connector>& cs = per_ic[ic];
        if (cs.empty())
            continue;
        const Point c = placement.reticle(ic).center;
        std::vector<std::vector<int>> groups;
        std::vector<Point> pos;
        if (policy == IntraPolicy::SingleSwitch) {
            groups.emplace_back(cs.size());
            std::iota(groups[0].begin(), groups[0].end(), 0);
            pos.push_back(c);
        } else {
            std::vector<int> order(cs.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return std::atan2(cs[a].at.y - c.y, cs[a].at.x - c.x) <
                       std::atan2(cs[b].at.y - c.y, cs[b].at.x - c.x);
            });
            const int n = static_cast<int>(cs.size());
            const int k = std::min(4, n);
            int next = 0;
            for (int s = 0; s < k; ++s) {
                const int size = n / k + (s < n % k ? 1 : 0);
                groups.emplace_back(order.begin() + next, order.begin() + next + size);
                next += size;
                Point p;
                for (int i : groups.back()) {
                    p.x += cs[i].at.x;
                    p.y += cs[i].at.y;
                }
                pos.push_back({p.x / size, p.y / size});
            }
        }
        const int first = static_cast<int>(g.routers.size());
        for (size_t s = 0; s < groups.size(); ++s) {
            const int id = static_cast<int>(g.routers.size());
            g.routers.push_back({id, ic, RouterRole::InterconnectSwitch, pos[s],
                                 static_cast<int>(groups[s].size())});
            for (int i : groups[s])
                g.add_link_pair(hub[cs[i].compute_reticle], id, LinkKind::Vertical, 0.0);
        }
        for (size_t a = 0; a < groups.size(); ++a)
            for (size_t b = a + 1; b < groups.size(); ++b) {
                const Point pa = pos[a], pb = pos[b];
                g.add_link_pair(first + static_cast<int>(a), first + static_cast<int>(b),
                                LinkKind::Planar, std::hypot(pa.x - pb.x, pa.y - pb.y));
            }
    }
    g.finalize();
    check_connected(g);
    return g;
}

}  // namespace wsnet
