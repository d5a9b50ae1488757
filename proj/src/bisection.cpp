#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "wsnet/topology.hpp"

namespace wsnet {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

std::vector<uint8_t> grow(const SimpleGraph& g, Rng& rng) {
    const int n = g.n;
    const int target = n / 2;
    std::vector<uint8_t> side(n, 0);
    std::vector<int> in_a(n, 0);
    int size = 0;
    std::vector<int> ties;
    while (size < target) {
        int best = -1 << 30;
        ties.clear();
        for (int v = 0; v < n; ++v) {
            if (side[v] || in_a[v] == 0)
                continue;
            const int gain = 2 * in_a[v] - static_cast<int>(g.adj[v].size());
            if (gain > best) {
                best = gain;
                ties.clear();
            }
            if (gain == best)
                ties.push_back(v);
        }
        if (ties.empty())
            for (int v = 0; v < n; ++v)
                if (!side[v])
                    ties.push_back(v);
        const int v = ties[std::uniform_int_distribution<size_t>(0, ties.size() - 1)(rng)];
        side[v] = 1;
        ++size;
        for (int u : g.adj[v])
            ++in_a[u];
    }
    return side;
}

// Fiduccia-Mattheyses passes with single-node moves; the pass may wander one
// node off balance and is rolled back to its best balanced prefix.
void fm_refine(const SimpleGraph& g, std::vector<uint8_t>& side, Rng& rng) {
    const int n = g.n;
    const int lo = n / 2, hi = (n + 1) / 2;
    std::vector<int> prio(n);
    std::iota(prio.begin(), prio.end(), 0);
    std::shuffle(prio.begin(), prio.end(), rng);
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i)
        rank[prio[i]] = i;

    int cut = cut_size(g, side);
    for (;;) {
        std::vector<int> gain(n);
        for (int v = 0; v < n; ++v) {
            int ext = 0;
            for (int u : g.adj[v])
                ext += side[u] != side[v];
            gain[v] = 2 * ext - static_cast<int>(g.adj[v].size());
        }
        int size1 = static_cast<int>(std::count(side.begin(), side.end(), 1));
        std::vector<uint8_t> locked(n, 0);
        std::vector<int> moves;
        int cur = cut, best_cut = cut;
        size_t best_len = 0;
        for (int step = 0; step < n; ++step) {
            int pick = -1;
            for (int v = 0; v < n; ++v) {
                if (locked[v])
                    continue;
                const int ns = size1 + (side[v] ? -1 : 1);
                if (ns < lo - 1 || ns > hi + 1)
                    continue;
                if (pick < 0 || gain[v] > gain[pick] ||
                    (gain[v] == gain[pick] && rank[v] < rank[pick]))
                    pick = v;
            }
            if (pick < 0)
                break;
            cur -= gain[pick];
            size1 += side[pick] ? -1 : 1;
            side[pick] ^= 1;
            locked[pick] = 1;
            moves.push_back(pick);
            gain[pick] = -gain[pick];
            for (int u : g.adj[pick])
                gain[u] += side[u] == side[pick] ? -2 : 2;
            if (size1 >= lo && size1 <= hi && cur < best_cut) {
                best_cut = cur;
                best_len = moves.size();
            }
        }
        for (size_t i = moves.size(); i > best_len; --i)
            side[moves[i - 1]] ^= 1;
        if (best_cut >= cut)
            break;
        cut = best_cut;
    }
}

int run_once(const SimpleGraph& g, uint64_t seed, int starts) {
    return cut_size(g, balanced_bipartition(g, seed, starts));
}

}  // namespace

SimpleGraph reticle_graph(const NetworkGraph& g, bool count_connectors) {
    const int nret = static_cast<int>(g.reticle_adjacency.size());
    std::vector<int> index(nret, -1);
    SimpleGraph s;
    for (int r = 0; r < nret; ++r)
        if (!g.reticle_adjacency[r].empty())
            index[r] = s.n++;
    s.adj.assign(s.n, {});
    if (count_connectors) {
        for (const Link& l : g.links) {
            const int a = g.routers[l.src].reticle_id, b = g.routers[l.dst].reticle_id;
            if (l.kind == LinkKind::Vertical)
                s.adj[index[a]].push_back(index[b]);
        }
        for (auto& v : s.adj)
            std::sort(v.begin(), v.end());
        return s;
    }
    for (int r = 0; r < nret; ++r)
        for (int t : g.reticle_adjacency[r])
            if (index[r] >= 0)
                s.adj[index[r]].push_back(index[t]);
    return s;
}

int cut_size(const SimpleGraph& g, const std::vector<uint8_t>& side) {
    int cut = 0;
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            cut += u > v && side[u] != side[v];
    return cut;
}

std::vector<uint8_t> balanced_bipartition(const SimpleGraph& g, uint64_t seed, int starts) {
    Rng rng(seed);
    std::vector<uint8_t> best;
    int best_cut = -1;
    for (int s = 0; s < std::max(1, starts); ++s) {
        std::vector<uint8_t> side = grow(g, rng);
        fm_refine(g, side, rng);
        const int c = cut_size(g, side);
        if (best_cut < 0 || c < best_cut) {
            best_cut = c;
            best = std::move(side);
        }
    }
    return best;
}

namespace {

template <class Better>
int exact_bisection(const SimpleGraph& g, Better better) {
    if (g.n > 24)
        throw DomainError("exact bisection limited to 24 nodes");
    if (g.n < 2)
        return 0;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            if (u > v)
                edges.push_back({v, u});
    const int k = g.n / 2;
    int best = -1;
    for (uint32_t mask = 0; mask < (1u << g.n); ++mask) {
        if (std::popcount(mask) != k)
            continue;
        int cut = 0;
        for (auto [a, b] : edges)
            cut += ((mask >> a) ^ (mask >> b)) & 1u;
        if (best < 0 || better(cut, best))
            best = cut;
    }
    return best;
}

}  // namespace

int exact_min_bisection(const SimpleGraph& g) {
    return exact_bisection(g, [](int a, int b) { return a < b; });
}

int exact_max_bisection(const SimpleGraph& g) {
    return exact_bisection(g, [](int a, int b) { return a > b; });
}

double bisection_estimate_serial(const SimpleGraph& g, const BisectionOptions& o) {
    if (o.runs < 1)
        throw DomainError("bisection needs at least one run");
    if (g.n < 2)
        throw DomainError("bisection needs at least two reticles");
    double total = 0;
    for (int r = 0; r < o.runs; ++r)
        total += run_once(g, splitmix64(o.seed + static_cast<uint64_t>(r)), o.starts_per_run);
    return total / o.runs * o.link_tbps;
}

double bisection_estimate(const SimpleGraph& g, const BisectionOptions& o) {
    if (!o.parallel)
        return bisection_estimate_serial(g, o);
    if (o.runs < 1)
        throw DomainError("bisection needs at least one run");
    if (g.n < 2)
        throw DomainError("bisection needs at least two reticles");
    std::vector<int> cuts(o.runs);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < o.runs; ++r)
        cuts[r] = run_once(g, splitmix64(o.seed + static_cast<uint64_t>(r)), o.starts_per_run);
    double total = 0;
    for (int c : cuts)
        total += c;
    return total / o.runs * o.link_tbps;
}

double bisection_estimate(const NetworkGraph& g, const BisectionOptions& o) {
    return bisection_estimate(reticle_graph(g, o.count_connectors), o);
}

}  // namespace wsnet
