#include <algorithm>
#include <cmath>
#include <numeric>

#include "wsnet/traffic.hpp"

namespace wsnet {

Pattern parse_pattern(const std::string& s) {
    if (s == "uniform") return Pattern::Uniform;
    if (s == "permutation") return Pattern::Permutation;
    if (s == "neighbor") return Pattern::Neighbor;
    if (s == "tornado") return Pattern::Tornado;
    if (s == "hotspot") return Pattern::Hotspot;
    if (s == "trace") return Pattern::Trace;
    throw DomainError("unknown traffic pattern: " + s);
}

std::string to_string(Pattern p) {
    switch (p) {
    case Pattern::Uniform: return "uniform";
    case Pattern::Permutation: return "permutation";
    case Pattern::Neighbor: return "neighbor";
    case Pattern::Tornado: return "tornado";
    case Pattern::Hotspot: return "hotspot";
    case Pattern::Trace: return "trace";
    }
    return "?";
}

std::vector<int> derangement(int n, uint64_t seed) {
    if (n < 2)
        throw TrafficError("derangement needs at least 2 endpoints");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rng rng(seed);
    for (int i = n - 1; i > 0; --i) {
        const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
        std::swap(p[i], p[j]);
    }
    return p;
}

std::vector<int> neighbor_map(const std::vector<Point>& c) {
    const int n = static_cast<int>(c.size());
    if (n < 2)
        throw TrafficError("neighbor pattern needs at least 2 endpoints");
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        double bd = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            const double d = std::hypot(c[i].x - c[j].x, c[i].y - c[j].y);
            if (best < 0 || d < bd - 1e-9) {
                best = j;
                bd = d;
            }
        }
        m[i] = best;
    }
    return m;
}

std::vector<int> tornado_map(const std::vector<Point>& c) {
    const int n = static_cast<int>(c.size());
    if (n < 2)
        throw TrafficError("tornado pattern needs at least 2 endpoints");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::abs(c[a].y - c[b].y) > 1e-9)
            return c[a].y < c[b].y;
        return c[a].x < c[b].x - 1e-9;
    });
    std::vector<int> m(n);
    for (int r = 0; r < n; ++r)
        m[order[r]] = order[(r + n / 2) % n];
    return m;
}

std::vector<Point> endpoint_centers(const NetworkGraph& g) {
    std::vector<Point> c;
    for (int r : g.compute_endpoints)
        c.push_back(g.routers[r].position);
    return c;
}

TrafficGenerator::TrafficGenerator(const NetworkGraph& g, const TrafficSpec& spec)
    : TrafficGenerator(endpoint_centers(g), spec) {}

TrafficGenerator::TrafficGenerator(const std::vector<Point>& centers, const TrafficSpec& spec)
    : spec_(spec), n_(static_cast<int>(centers.size())) {
    if (n_ < 2)
        throw TrafficError("traffic needs at least 2 endpoints");
    if (!(spec.offered_rate >= 0 && spec.offered_rate <= 1))
        throw TrafficError("offered rate must be in [0, 1]");
    switch (spec.pattern) {
    case Pattern::Permutation: map_ = derangement(n_, spec.seed); break;
    case Pattern::Neighbor: map_ = neighbor_map(centers); break;
    case Pattern::Tornado: map_ = tornado_map(centers); break;
    case Pattern::Hotspot:
        if (spec.hotspot < 0 || spec.hotspot >= n_)
            throw TrafficError("hotspot endpoint out of range");
        break;
    case Pattern::Trace: throw TrafficError("trace traffic is replayed, not generated");
    default: break;
    }
}

int TrafficGenerator::destination(int src, Rng& rng) const {
    switch (spec_.pattern) {
    case Pattern::Uniform: {
        const int d = std::uniform_int_distribution<int>(0, n_ - 2)(rng);
        return d >= src ? d + 1 : d;
    }
    case Pattern::Hotspot: return spec_.hotspot;
    default: return map_[src];
    }
}

long long packets_for_message(long long bytes) {
    return bytes <= 0 ? 1 : (bytes + kTracePacketBytes - 1) / kTracePacketBytes;
}

}  // namespace wsnet
