#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "json.hpp"
#include "wsnet/routing.hpp"

namespace wsnet {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<int> bfs_to(const NetworkGraph& g, int target) {
    std::vector<int> d(g.routers.size(), -1);
    std::queue<int> q;
    d[target] = 0;
    q.push(target);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int l : g.in_links[v]) {
            const int u = g.links[l].src;
            if (d[u] < 0) {
                d[u] = d[v] + 1;
                q.push(u);
            }
        }
    }
    return d;
}

std::vector<int> bfs_from(const NetworkGraph& g, int source) {
    std::vector<int> d(g.routers.size(), -1);
    std::queue<int> q;
    d[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int l : g.out_links[u]) {
            const int v = g.links[l].dst;
            if (d[v] < 0) {
                d[v] = d[u] + 1;
                q.push(v);
            }
        }
    }
    return d;
}

struct TurnSet {
    std::vector<std::vector<int>> by_in;

    explicit TurnSet(size_t links) : by_in(links) {}
    bool has(int in, int out) const {
        if (in < 0)
            return false;
        const auto& v = by_in[in];
        return std::binary_search(v.begin(), v.end(), out);
    }
    void add(int in, int out) {
        auto& v = by_in[in];
        v.insert(std::lower_bound(v.begin(), v.end(), out), out);
    }
    void remove(int in, int out) {
        auto& v = by_in[in];
        v.erase(std::lower_bound(v.begin(), v.end(), out));
    }
};

// cost[l] = fewest hops to target after traversing l, following only
// permitted turns; -1 if target is unreachable that way.
std::vector<int> turn_costs(const NetworkGraph& g, int target, const TurnSet& turns) {
    const int nl = static_cast<int>(g.links.size());
    std::vector<int> cost(nl, -1);
    std::queue<int> q;
    for (int l : g.in_links[target]) {
        cost[l] = 0;
        q.push(l);
    }
    while (!q.empty()) {
        const int o = q.front();
        q.pop();
        const int u = g.links[o].src;
        for (int l : g.in_links[u])
            if (cost[l] < 0 && g.links[l].dst != target && !turns.has(l, o)) {
                cost[l] = cost[o] + 1;
                q.push(l);
            }
    }
    return cost;
}

// Sum of routed path lengths towards one endpoint, -1 if some source is cut off.
long route_length(const NetworkGraph& g, const std::vector<int>& cost, int target) {
    long total = 0;
    for (int s : g.compute_endpoints) {
        if (s == target)
            continue;
        int m = -1;
        for (int l : g.out_links[s])
            if (cost[l] >= 0 && (m < 0 || cost[l] + 1 < m))
                m = cost[l] + 1;
        if (m < 0)
            return -1;
        total += m;
    }
    return total;
}

double non_minimal_fraction(const NetworkGraph& g, const std::vector<std::vector<int>>& cost) {
    const auto dist = router_distances(g);
    long longer = 0, pairs = 0;
    for (size_t e = 0; e < g.compute_endpoints.size(); ++e)
        for (int s : g.compute_endpoints) {
            if (s == g.compute_endpoints[e])
                continue;
            int m = -1;
            for (int l : g.out_links[s])
                if (cost[e][l] >= 0 && (m < 0 || cost[e][l] + 1 < m))
                    m = cost[e][l] + 1;
            ++pairs;
            longer += m != dist[e][s];
        }
    return pairs ? static_cast<double>(longer) / pairs : 0.0;
}

// Tarjan SCC plus back-edge cycle sampling; one cycle per DFS back edge.
class CycleCounter {
public:
    CycleCounter(int n, const std::vector<std::pair<int, int>>& arcs) : n_(n), adj_(n) {
        for (size_t i = 0; i < arcs.size(); ++i)
            adj_[arcs[i].first].push_back(arcs[i].second);
        for (auto& v : adj_)
            std::sort(v.begin(), v.end());
    }

    std::vector<std::vector<std::pair<int, int>>> run() {
        scc_.assign(n_, -1);
        index_.assign(n_, -1);
        low_.assign(n_, 0);
        on_.assign(n_, 0);
        for (int v = 0; v < n_; ++v)
            if (index_[v] < 0)
                tarjan(v);
        std::vector<int> scc_size(next_scc_, 0);
        for (int v = 0; v < n_; ++v)
            ++scc_size[scc_[v]];
        state_.assign(n_, 0);
        for (int v = 0; v < n_; ++v)
            if (state_[v] == 0 && (scc_size[scc_[v]] > 1 || self_loop(v)))
                sample(v);
        return cycles_;
    }

private:
    bool self_loop(int v) const { return std::binary_search(adj_[v].begin(), adj_[v].end(), v); }

    void tarjan(int root) {
        struct Frame {
            int v;
            size_t i;
        };
        std::vector<Frame> call{{root, 0}};
        index_[root] = low_[root] = counter_++;
        stack_.push_back(root);
        on_[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.i < adj_[f.v].size()) {
                const int w = adj_[f.v][f.i++];
                if (index_[w] < 0) {
                    index_[w] = low_[w] = counter_++;
                    stack_.push_back(w);
                    on_[w] = 1;
                    call.push_back({w, 0});
                } else if (on_[w]) {
                    low_[f.v] = std::min(low_[f.v], index_[w]);
                }
                continue;
            }
            const int v = f.v;
            if (low_[v] == index_[v]) {
                for (;;) {
                    const int w = stack_.back();
                    stack_.pop_back();
                    on_[w] = 0;
                    scc_[w] = next_scc_;
                    if (w == v)
                        break;
                }
                ++next_scc_;
            }
            call.pop_back();
            if (!call.empty())
                low_[call.back().v] = std::min(low_[call.back().v], low_[v]);
        }
    }

    void sample(int root) {
        struct Frame {
            int v;
            size_t i;
        };
        std::vector<Frame> call{{root, 0}};
        std::vector<int> path{root};
        std::vector<int> pos(n_, -1);
        pos[root] = 0;
        state_[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.i < adj_[f.v].size()) {
                const int w = adj_[f.v][f.i++];
                if (scc_[w] != scc_[f.v])
                    continue;
                if (state_[w] == 1) {
                    std::vector<std::pair<int, int>> cyc;
                    for (size_t k = pos[w]; k + 1 < path.size(); ++k)
                        cyc.push_back({path[k], path[k + 1]});
                    cyc.push_back({f.v, w});
                    cycles_.push_back(std::move(cyc));
                } else if (state_[w] == 0) {
                    state_[w] = 1;
                    pos[w] = static_cast<int>(path.size());
                    path.push_back(w);
                    call.push_back({w, 0});
                }
                continue;
            }
            state_[f.v] = 2;
            pos[f.v] = -1;
            path.pop_back();
            call.pop_back();
        }
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> scc_, index_, low_, stack_, state_;
    std::vector<char> on_;
    int counter_ = 0, next_scc_ = 0;
    std::vector<std::vector<std::pair<int, int>>> cycles_;
};

void fill_prohibited(RoutingTables& t, const TurnSet& turns) {
    t.prohibited.clear();
    for (size_t in = 0; in < turns.by_in.size(); ++in)
        for (int out : turns.by_in[in])
            t.prohibited.push_back({static_cast<int>(in), out});
    t.index_prohibited();
}

RoutingTables updown_tables(const NetworkGraph& g) {
    const int nr = static_cast<int>(g.routers.size());
    int root = 0, best = -1;
    for (int r = 0; r < nr; ++r) {
        const auto d = bfs_from(g, r);
        const int ecc = *std::max_element(d.begin(), d.end());
        if (best < 0 || ecc < best) {
            best = ecc;
            root = r;
        }
    }
    const auto level = bfs_from(g, root);
    auto up = [&](int l) {
        const Link& k = g.links[l];
        return std::pair{level[k.dst], k.dst} < std::pair{level[k.src], k.src};
    };
    TurnSet turns(g.links.size());
    for (int v = 0; v < nr; ++v)
        for (int in : g.in_links[v])
            if (!up(in))
                for (int out : g.out_links[v])
                    if (up(out))
                        turns.add(in, out);
    RoutingTables t;
    t.mode = RoutingMode::UpDown;
    t.updown_root = root;
    for (int target : g.compute_endpoints)
        t.cost.push_back(turn_costs(g, target, turns));
    fill_prohibited(t, turns);
    t.fallback_fraction = non_minimal_fraction(g, t.cost);
    return t;
}

}  // namespace

std::vector<std::vector<int>> router_distances(const NetworkGraph& g) {
    std::vector<std::vector<int>> out;
    for (int t : g.compute_endpoints)
        out.push_back(bfs_to(g, t));
    return out;
}

PortMap shortest_path_ports(const NetworkGraph& g) {
    const int nr = static_cast<int>(g.routers.size());
    const int ne = g.endpoint_count();
    PortMap sp(nr, std::vector<std::vector<int>>(ne));
    const auto dist = router_distances(g);
    for (int e = 0; e < ne; ++e)
        for (int u = 0; u < nr; ++u) {
            if (dist[e][u] < 0)
                throw RoutingError("endpoint " + std::to_string(e) + " unreachable from router " +
                                   std::to_string(u));
            for (int l : g.out_links[u])
                if (dist[e][g.links[l].dst] == dist[e][u] - 1)
                    sp[u][e].push_back(l);
        }
    return sp;
}

void RoutingTables::index_prohibited() {
    std::sort(prohibited.begin(), prohibited.end());
    prohibited_by_in_.clear();
    for (auto [in, out] : prohibited) {
        if (in >= static_cast<int>(prohibited_by_in_.size()))
            prohibited_by_in_.resize(in + 1);
        prohibited_by_in_[in].push_back(out);
    }
}

bool RoutingTables::turn_prohibited(int in, int out) const {
    if (in < 0 || in >= static_cast<int>(prohibited_by_in_.size()))
        return false;
    const auto& v = prohibited_by_in_[in];
    return std::binary_search(v.begin(), v.end(), out);
}

std::vector<int> RoutingTables::ports(const NetworkGraph& g, int router, int in_link,
                                      int dest) const {
    const std::vector<int>& c = cost.at(dest);
    std::vector<int> out;
    int best = -1;
    for (int l : g.out_links[router]) {
        if (c[l] < 0 || turn_prohibited(in_link, l))
            continue;
        if (best < 0 || c[l] < best) {
            best = c[l];
            out.clear();
        }
        if (c[l] == best)
            out.push_back(l);
    }
    return out;
}

std::vector<std::pair<int, int>> dependency_arcs(const NetworkGraph& g, const RoutingTables& t) {
    std::vector<std::pair<int, int>> arcs;
    const int nl = static_cast<int>(g.links.size());
    std::vector<char> seen(nl);
    for (int e = 0; e < g.endpoint_count(); ++e) {
        const int target = g.compute_endpoints[e];
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<int> stack;
        for (int s : g.compute_endpoints) {
            if (s == target)
                continue;
            for (int l : t.ports(g, s, -1, e))
                if (!seen[l]) {
                    seen[l] = 1;
                    stack.push_back(l);
                }
        }
        while (!stack.empty()) {
            const int l = stack.back();
            stack.pop_back();
            const int v = g.links[l].dst;
            if (v == target)
                continue;
            for (int o : t.ports(g, v, l, e)) {
                arcs.push_back({l, o});
                if (!seen[o]) {
                    seen[o] = 1;
                    stack.push_back(o);
                }
            }
        }
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    return arcs;
}

bool is_acyclic(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : arcs) {
        adj[a].push_back(b);
        ++indeg[b];
    }
    std::vector<int> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0)
            q.push_back(v);
    int done = 0;
    while (!q.empty()) {
        const int v = q.back();
        q.pop_back();
        ++done;
        for (int w : adj[v])
            if (--indeg[w] == 0)
                q.push_back(w);
    }
    return done == n;
}

RoutingTables break_cycles(const NetworkGraph& g, const PortMap& sp, const CycleBreakOptions& opts) {
    if (sp.size() != g.routers.size())
        throw RoutingError("port map does not match graph");
    if (opts.force_fallback)
        return updown_tables(g);
    const int ne = g.endpoint_count();
    const int nl = static_cast<int>(g.links.size());
    int iterations = 0;
    // One greedy pass; false when it reaches a state where every remaining
    // cycle arc would disconnect some pair.
    auto attempt = [&](std::uint64_t seed, RoutingTables& t) {
    TurnSet turns(nl);
    std::vector<long> length(ne);
    for (int e = 0; e < ne; ++e) {
        t.cost.push_back(turn_costs(g, g.compute_endpoints[e], turns));
        length[e] = route_length(g, t.cost[e], g.compute_endpoints[e]);
    }
    auto affected = [&](int e, int in, int out) {
        return t.cost[e][in] >= 0 && t.cost[e][in] == t.cost[e][out] + 1;
    };
    // Prohibiting (in, out) leaves every cost unchanged iff each destination
    // routed over the turn has another permitted continuation of equal cost.
    auto keeps_costs = [&](int in, int out) {
        const int v = g.links[in].dst;
        for (int e = 0; e < ne; ++e) {
            if (!affected(e, in, out))
                continue;
            bool alt = false;
            for (int o : g.out_links[v])
                if (o != out && t.cost[e][o] == t.cost[e][out] && !turns.has(in, o)) {
                    alt = true;
                    break;
                }
            if (!alt)
                return false;
        }
        return true;
    };
    // Total route-length increase if (in, out) were prohibited, -1 if some
    // pair would lose every route.
    auto evaluate = [&](int in, int out) {
        turns.add(in, out);
        long delta = 0;
        for (int e = 0; e < ne && delta >= 0; ++e) {
            if (!affected(e, in, out))
                continue;
            const auto c = turn_costs(g, g.compute_endpoints[e], turns);
            const long len = route_length(g, c, g.compute_endpoints[e]);
            delta = len < 0 ? -1 : delta + (len - length[e]);
        }
        turns.remove(in, out);
        return delta;
    };
    auto commit = [&](int in, int out) {
        std::vector<int> redo;
        for (int e = 0; e < ne; ++e)
            if (affected(e, in, out))
                redo.push_back(e);
        turns.add(in, out);
        for (int e : redo) {
            t.cost[e] = turn_costs(g, g.compute_endpoints[e], turns);
            length[e] = route_length(g, t.cost[e], g.compute_endpoints[e]);
        }
    };
    std::vector<char> seen(nl);
    std::vector<int> stack;
    // Dependency arcs induced by the current costs and prohibitions.
    auto current_arcs = [&] {
        std::vector<std::pair<int, int>> arcs;
        for (int e = 0; e < ne; ++e) {
            const int target = g.compute_endpoints[e];
            const std::vector<int>& c = t.cost[e];
            std::fill(seen.begin(), seen.end(), 0);
            stack.clear();
            for (int s : g.compute_endpoints) {
                if (s == target)
                    continue;
                int m = -1;
                for (int l : g.out_links[s])
                    if (c[l] >= 0 && (m < 0 || c[l] < m))
                        m = c[l];
                for (int l : g.out_links[s])
                    if (c[l] == m && m >= 0 && !seen[l]) {
                        seen[l] = 1;
                        stack.push_back(l);
                    }
            }
            while (!stack.empty()) {
                const int l = stack.back();
                stack.pop_back();
                const int v = g.links[l].dst;
                if (v == target)
                    continue;
                for (int o : g.out_links[v])
                    if (c[o] >= 0 && c[o] == c[l] - 1 && !turns.has(l, o)) {
                        arcs.push_back({l, o});
                        if (!seen[o]) {
                            seen[o] = 1;
                            stack.push_back(o);
                        }
                    }
            }
        }
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        return arcs;
    };
    for (;;) {
        const auto cycles = CycleCounter(nl, current_arcs()).run();
        if (cycles.empty())
            break;
        ++t.greedy_iterations;
        ++iterations;
        std::vector<std::pair<int, int>> arcs;
        for (const auto& cyc : cycles)
            arcs.insert(arcs.end(), cyc.begin(), cyc.end());
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        auto arc_index = [&](std::pair<int, int> a) {
            return static_cast<int>(std::lower_bound(arcs.begin(), arcs.end(), a) - arcs.begin());
        };
        std::vector<std::vector<int>> members(arcs.size());
        std::vector<std::vector<int>> cycle_arcs(cycles.size());
        for (size_t c = 0; c < cycles.size(); ++c)
            for (const auto& a : cycles[c]) {
                const int i = arc_index(a);
                members[i].push_back(static_cast<int>(c));
                cycle_arcs[c].push_back(i);
            }
        std::vector<int> alive(arcs.size());
        for (size_t i = 0; i < arcs.size(); ++i)
            alive[i] = static_cast<int>(members[i].size());
        std::vector<char> broken(cycles.size(), 0);
        int alive_cycles = static_cast<int>(cycles.size());
        auto break_cycles_of = [&](int i) {
            for (int c : members[i])
                if (!broken[c]) {
                    broken[c] = 1;
                    --alive_cycles;
                    for (int j : cycle_arcs[c])
                        --alive[j];
                }
        };
        // Max alive count first, lowest arc on ties; stale entries are skipped.
        std::vector<std::uint64_t> rank(arcs.size());
        for (size_t i = 0; i < arcs.size(); ++i)
            rank[i] = seed == 0 ? ~static_cast<std::uint64_t>(i)
                                : splitmix(seed ^ (static_cast<std::uint64_t>(arcs[i].first) << 32 |
                                                   static_cast<std::uint32_t>(arcs[i].second)));
        std::priority_queue<std::tuple<int, std::uint64_t, int>> heap;
        for (size_t i = 0; i < arcs.size(); ++i)
            heap.push({alive[i], rank[i], static_cast<int>(i)});
        std::vector<char> tried(arcs.size(), 0);
        std::vector<int> costly;
        bool progress = false;
        while (!heap.empty() && alive_cycles > 0) {
            const auto [cnt, r, i] = heap.top();
            heap.pop();
            if (tried[i] || alive[i] == 0)
                continue;
            if (cnt != alive[i]) {
                heap.push({alive[i], r, i});
                continue;
            }
            tried[i] = 1;
            const auto [in, out] = arcs[i];
            if (keeps_costs(in, out)) {
                turns.add(in, out);
                progress = true;
                break_cycles_of(i);
            } else {
                costly.push_back(i);
            }
        }
        if (alive_cycles == 0)
            continue;
        // The remaining cycles need a prohibition that lengthens some routes.
        int best = -1, evaluated = 0;
        long best_delta = -1;
        for (int i : costly) {
            if (alive[i] == 0)
                continue;
            const long d = evaluate(arcs[i].first, arcs[i].second);
            if (d < 0)
                continue;
            if (best < 0 || d < best_delta) {
                best_delta = d;
                best = i;
            }
            if (++evaluated >= opts.max_candidates_per_iteration)
                break;
        }
        if (best >= 0) {
            commit(arcs[best].first, arcs[best].second);
            continue;
        }
        if (!progress)
            return false;
    }
    fill_prohibited(t, turns);
    t.fallback_fraction = non_minimal_fraction(g, t.cost);
    t.mode = t.fallback_fraction > 0 ? RoutingMode::PartialFallback : RoutingMode::ShortestPath;
    return true;
    };
    for (int k = 0; k < std::max(1, opts.attempts); ++k) {
        RoutingTables t;
        if (attempt(static_cast<std::uint64_t>(k), t)) {
            t.greedy_iterations = iterations;
            return t;
        }
    }
    RoutingTables fb = updown_tables(g);
    fb.greedy_iterations = iterations;
    return fb;
}



RoutingTables build_routing(const NetworkGraph& g, const CycleBreakOptions& opts) {
    return break_cycles(g, shortest_path_ports(g), opts);
}

RoutingAudit audit_routing(const NetworkGraph& g, const RoutingTables& t) {
    RoutingAudit a;
    a.acyclic = is_acyclic(static_cast<int>(g.links.size()), dependency_arcs(g, t));
    const auto dist = router_distances(g);
    const int nl = static_cast<int>(g.links.size());
    for (int e = 0; e < g.endpoint_count(); ++e) {
        const int target = g.compute_endpoints[e];
        std::vector<char> seen(nl, 0);
        std::vector<int> stack;
        for (int s : g.compute_endpoints) {
            if (s == target)
                continue;
            const auto p = t.ports(g, s, -1, e);
            if (p.empty())
                ++a.unroutable_pairs;
            for (int l : p) {
                if (t.cost[e][l] + 1 == dist[e][s] && dist[e][g.links[l].dst] != dist[e][s] - 1)
                    ++a.non_decreasing_steps;
                if (!seen[l]) {
                    seen[l] = 1;
                    stack.push_back(l);
                }
            }
        }
        while (!stack.empty()) {
            const int l = stack.back();
            stack.pop_back();
            const int v = g.links[l].dst;
            if (v == target)
                continue;
            const auto p = t.ports(g, v, l, e);
            if (p.empty())
                ++a.unroutable_pairs;
            for (int o : p) {
                bool dec = t.cost[e][o] == t.cost[e][l] - 1;
                if (t.cost[e][l] == dist[e][v])
                    dec = dec && dist[e][g.links[o].dst] == dist[e][v] - 1;
                if (!dec)
                    ++a.non_decreasing_steps;
                if (!seen[o]) {
                    seen[o] = 1;
                    stack.push_back(o);
                }
            }
        }
    }
    a.complete = a.unroutable_pairs == 0;
    a.livelock_free = a.non_decreasing_steps == 0;
    return a;
}

SelectionKind parse_selection(const std::string& s) {
    if (s == "random") return SelectionKind::Random;
    if (s == "adaptive") return SelectionKind::Adaptive;
    throw DomainError("unknown selection policy: " + s);
}

std::string to_string(SelectionKind k) { return k == SelectionKind::Random ? "random" : "adaptive"; }

int select_port(SelectionKind kind, std::span<const int> permitted, std::span<const int> credits,
                Rng& rng) {
    if (permitted.empty())
        throw RoutingError("select_port: empty port set");
    if (permitted.size() == 1)
        return permitted[0];
    if (kind == SelectionKind::Random)
        return permitted[std::uniform_int_distribution<size_t>(0, permitted.size() - 1)(rng)];
    int best = -1;
    int ties[64];
    int nt = 0;
    for (int l : permitted) {
        const int c = credits[l];
        if (c > best) {
            best = c;
            nt = 0;
        }
        if (c == best && nt < 64)
            ties[nt++] = l;
    }
    return ties[std::uniform_int_distribution<int>(0, nt - 1)(rng)];
}

std::string routing_to_json(const NetworkGraph& g, const RoutingTables& t) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "routing";
    j["mode"] = t.mode == RoutingMode::ShortestPath      ? "shortest_path"
                : t.mode == RoutingMode::PartialFallback ? "partial_fallback"
                                                         : "up_down";
    j["fallback_fraction"] = t.fallback_fraction;
    if (t.mode == RoutingMode::UpDown)
        j["updown_root"] = t.updown_root;
    nlohmann::json entries = nlohmann::json::array();
    for (const Router& r : g.routers) {
        nlohmann::json row = nlohmann::json::object();
        for (int e = 0; e < g.endpoint_count(); ++e)
            if (g.compute_endpoints[e] != r.id)
                row[std::to_string(e)] = t.entry(g, r.id, e);
        entries.push_back(row);
    }
    j["entries"] = entries;
    j["prohibited_turns"] = t.prohibited;
    return j.dump(1);
}

}  // namespace wsnet
