#include <algorithm>
#include <climits>
#include <ostream>

#include "json.hpp"
#include "wsnet/simnet.hpp"

namespace wsnet {

namespace {

uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

void EnergyModel::validate() const {
    if (pj_per_bit_per_stage < 0 || router_energy_pj_per_flit < 0)
        throw DomainError("energy coefficients must be non-negative");
}

void SimConfig::validate() const {
    if (buffer_depth_flits <= 0 || router_latency_cycles <= 0 || flit_bytes <= 0 ||
        packet_flits <= 0 || source_queue_packets <= 0 || warmup_cycles < 0 ||
        measure_cycles <= 0 || drain_cycle_cap <= 0 || watchdog_cycles <= 0)
        throw DomainError("simulation parameters must be positive");
    if (vcs_per_channel != 1)
        throw DomainError("only one virtual channel per physical channel is modeled");
    if (drain_cycle_cap <= measure_cycles)
        throw DomainError("drain cap must exceed the measurement window");
    energy.validate();
}

long idle_latency(int hops, int link_latency_sum, int flits, int router_latency) {
    return static_cast<long>(hops + 1) * router_latency + link_latency_sum + (flits - 1);
}

Simulator::Simulator(const NetworkGraph& g, const RoutingTables& t, const SimConfig& cfg)
    : g_(g), t_(t), cfg_(cfg), sel_rng_(mix(cfg.seed * 2 + 1)) {
    nl_ = static_cast<int>(g.links.size());
    ne_ = g.endpoint_count();
    source_.resize(ne_);
    next_seq_.assign(ne_, 0);
    in_.resize(nl_ + ne_);
    route_.assign(nl_ + ne_, -1);
    allocated_.assign(nl_ + ne_, 0);
    owner_.assign(nl_ + ne_, -1);
    stamp_.assign(nl_ + ne_, -1);
    credits_.assign(nl_, cfg.buffer_depth_flits);
    expect_seq_.assign(ne_, 0);
    const int nr = static_cast<int>(g.routers.size());
    inputs_of_.resize(nr);
    for (int r = 0; r < nr; ++r) {
        inputs_of_[r] = g.in_links[r];
        if (g.endpoint_index[r] >= 0)
            inputs_of_[r].push_back(nl_ + g.endpoint_index[r]);
    }
    rr_.assign(nr, 0);
    occupancy_.assign(nr, 0);
    active_flag_.assign(nr, 0);
    int maxlat = 1;
    for (const auto& l : g.links)
        maxlat = std::max(maxlat, l.latency_cycles);
    long size = 1;
    while (size < maxlat + 2)
        size <<= 1;
    wheel_.resize(size);
    wheel_mask_ = size - 1;
    flits_on_link_.assign(nl_, 0);
    credits_on_link_.assign(nl_, 0);
    link_flits_.assign(nl_, 0);
}

long Simulator::enqueue(int src, int dst, int flits, bool measured, long user) {
    if (src < 0 || src >= ne_ || dst < 0 || dst >= ne_ || src == dst || flits <= 0)
        throw SimError("invalid packet");
    PacketRecord p;
    p.id = static_cast<long>(packets_.size());
    p.src = src;
    p.dst = dst;
    p.flits = flits;
    p.injection_cycle = now_;
    p.measured = measured;
    p.user = user;
    packets_.push_back(p);
    source_[src].push_back(p.id);
    ++queued_packets_;
    if (cfg_.event_log)
        *cfg_.event_log << now_ << " enqueue p" << p.id << " " << src << "->" << dst << " flits "
                        << flits << "\n";
    return p.id;
}

void Simulator::skip_to(long cycle) {
    if (!empty())
        throw SimError("skip_to on a busy network");
    if (cycle <= now_)
        return;
    if (cycle - now_ <= wheel_mask_ + 1) {
        while (now_ < cycle)
            step();
        return;
    }
    for (auto& slot : wheel_) {
        for (const Event& e : slot) {
            ++credits_[e.link];
            --credits_on_link_[e.link];
        }
        slot.clear();
    }
    now_ = cycle;
}

std::vector<long> Simulator::take_delivered() {
    std::vector<long> d;
    d.swap(delivered_);
    return d;
}

void Simulator::reset_link_counters() { std::fill(link_flits_.begin(), link_flits_.end(), 0); }

void Simulator::deliver_events() {
    auto& slot = wheel_[now_ & wheel_mask_];
    for (const Event& e : slot) {
        if (e.packet < 0) {
            ++credits_[e.link];
            --credits_on_link_[e.link];
            continue;
        }
        auto& q = in_[e.link];
        q.push_back({e.packet, e.seq, now_});
        if (static_cast<int>(q.size()) > cfg_.buffer_depth_flits)
            throw SimError("buffer overflow on link " + std::to_string(e.link));
        const int r = g_.links[e.link].dst;
        ++occupancy_[r];
        if (!active_flag_[r]) {
            active_flag_[r] = 1;
            active_.push_back(r);
        }
        --flits_on_link_[e.link];
        --on_links_;
        ++buffered_;
    }
    slot.clear();
}

void Simulator::inject() {
    for (int e = 0; e < ne_; ++e) {
        auto& src = source_[e];
        if (src.empty())
            continue;
        auto& q = in_[nl_ + e];
        if (static_cast<int>(q.size()) >= cfg_.buffer_depth_flits)
            continue;
        const long id = src.front();
        PacketRecord& p = packets_[id];
        const int seq = next_seq_[e]++;
        if (seq == 0)
            p.head_departure = now_;
        q.push_back({id, seq, now_});
        const int r = g_.compute_endpoints[e];
        ++occupancy_[r];
        if (!active_flag_[r]) {
            active_flag_[r] = 1;
            active_.push_back(r);
        }
        ++injected_flits_;
        ++buffered_;
        ++in_network_;
        last_progress_ = now_;
        if (next_seq_[e] == p.flits) {
            src.pop_front();
            next_seq_[e] = 0;
            --queued_packets_;
        }
    }
}

void Simulator::route_head(int router, int port, const Flit& f) {
    const PacketRecord& p = packets_[f.packet];
    if (g_.compute_endpoints[p.dst] == router) {
        route_[port] = nl_ + p.dst;
        return;
    }
    const auto permitted = t_.ports(g_, router, port < nl_ ? port : -1, p.dst);
    if (permitted.empty())
        throw SimError("routing lookup miss at router " + std::to_string(router));
    route_[port] = select_port(cfg_.selection, permitted, credits_, sel_rng_);
}

void Simulator::traverse() {
    const int R = cfg_.router_latency_cycles;
    const bool adaptive = cfg_.selection == SelectionKind::Adaptive;
    for (int r : active_) {
        const auto& ins = inputs_of_[r];
        const int n = static_cast<int>(ins.size());
        const int start = rr_[r]++ % n;
        for (int j = 0; j < n; ++j) {
            const int p = ins[(start + j) % n];
            auto& q = in_[p];
            if (q.empty())
                continue;
            const Flit f = q.front();
            if (f.arrival + R > now_)
                continue;
            if (route_[p] < 0 || (adaptive && !allocated_[p]))
                route_head(r, p, f);
            const int o = route_[p];
            if (stamp_[o] == now_ || (owner_[o] >= 0 && owner_[o] != p))
                continue;
            if (o < nl_ && credits_[o] == 0)
                continue;
            q.pop_front();
            --occupancy_[r];
            --buffered_;
            if (p < nl_) {
                const long at = now_ + g_.links[p].latency_cycles;
                wheel_[at & wheel_mask_].push_back({p, -1, 0});
                ++credits_on_link_[p];
            }
            PacketRecord& pk = packets_[f.packet];
            const bool tail = f.seq == pk.flits - 1;
            if (o < nl_) {
                const Link& l = g_.links[o];
                --credits_[o];
                wheel_[(now_ + l.latency_cycles) & wheel_mask_].push_back({o, f.packet, f.seq});
                ++flits_on_link_[o];
                ++on_links_;
                ++link_flits_[o];
                if (f.seq == 0) {
                    ++pk.hops;
                    pk.pipeline_stages += l.pipeline_stages;
                    pk.link_latency_sum += l.latency_cycles;
                }
                if (cfg_.event_log)
                    *cfg_.event_log << now_ << " move p" << f.packet << "." << f.seq << " r" << r
                                    << " l" << o << "\n";
            } else {
                const int e = o - nl_;
                if (f.seq != expect_seq_[e])
                    ++violations_;
                expect_seq_[e] = tail ? 0 : f.seq + 1;
                ++ejected_flits_;
                --in_network_;
                if (tail) {
                    pk.tail_arrival = now_;
                    delivered_.push_back(f.packet);
                    if (cfg_.event_log)
                        *cfg_.event_log << now_ << " eject p" << f.packet << " latency "
                                        << pk.latency() << "\n";
                }
            }
            stamp_[o] = now_;
            allocated_[p] = 1;
            owner_[o] = tail ? -1 : p;
            if (tail) {
                route_[p] = -1;
                allocated_[p] = 0;
            }
            last_progress_ = now_;
        }
    }
    size_t k = 0;
    for (int r : active_) {
        if (occupancy_[r] > 0)
            active_[k++] = r;
        else
            active_flag_[r] = 0;
    }
    active_.resize(k);
}

void Simulator::audit() const {
    if (injected_flits_ != ejected_flits_ + buffered_ + on_links_)
        throw SimError("flit conservation violated at cycle " + std::to_string(now_));
    for (int l = 0; l < nl_; ++l) {
        const long total = credits_[l] + static_cast<long>(in_[l].size()) + flits_on_link_[l] +
                           credits_on_link_[l];
        if (total != cfg_.buffer_depth_flits || credits_[l] < 0)
            throw SimError("credit conservation violated on link " + std::to_string(l));
    }
    for (const auto& q : in_)
        if (static_cast<int>(q.size()) > cfg_.buffer_depth_flits)
            throw SimError("buffer occupancy above depth");
    if (violations_ > 0)
        throw SimError("wormhole integrity violated");
}

void Simulator::step() {
    deliver_events();
    inject();
    traverse();
    if (cfg_.audit) {
        try {
            audit();
        } catch (const SimError&) {
            ++violations_;
        }
    }
    ++now_;
}

SimReport simulate(const NetworkGraph& g, const RoutingTables& t, const TrafficSpec& traffic,
                   const SimConfig& cfg) {
    cfg.validate();
    const TrafficGenerator gen(g, traffic);
    Simulator sim(g, t, cfg);
    Rng rng(mix(cfg.seed * 2 + 2));
    const int ne = g.endpoint_count();
    const int F = cfg.packet_flits;
    if (!(traffic.offered_rate >= 0))
        throw DomainError("offered rate must be non-negative");
    const double p = std::min(1.0, traffic.offered_rate / F);
    std::geometric_distribution<long> geo(std::clamp(p, 1e-12, 0.999999));
    auto gap = [&](Rng& r) { return p >= 1.0 ? 0L : geo(r); };
    std::vector<long> next(ne, LONG_MAX);
    int injecting = 0;
    for (int e = 0; e < ne; ++e)
        if (gen.injects(e)) {
            if (p > 0)
                next[e] = gap(rng);
            ++injecting;
        }
    const long warm = cfg.warmup_cycles;
    const long end = warm + cfg.measure_cycles;
    const long cap = end + cfg.drain_cycle_cap;

    SimReport rep;
    long offered = 0, accepted = 0, outstanding = 0, window_flits = 0;
    double lat = 0, netlat = 0, hops = 0, stages = 0, energy_pj = 0, bytes = 0;
    long minl = LONG_MAX, maxl = 0;
    std::vector<double> util;
    auto account = [&](const PacketRecord& pk) {
        if (pk.tail_arrival >= warm && pk.tail_arrival < end)
            window_flits += pk.flits;
        if (!pk.measured)
            return;
        --outstanding;
        ++rep.delivered_packets;
        const long l = pk.latency();
        lat += static_cast<double>(l);
        netlat += static_cast<double>(pk.tail_arrival - pk.head_departure);
        hops += pk.hops;
        stages += pk.pipeline_stages;
        minl = std::min(minl, l);
        maxl = std::max(maxl, l);
        const size_t bin = static_cast<size_t>(l / rep.histogram_bin_cycles);
        if (rep.latency_histogram.size() <= bin)
            rep.latency_histogram.resize(bin + 1, 0);
        ++rep.latency_histogram[bin];
        energy_pj += pk.flits * (cfg.flit_bytes * 8.0 * cfg.energy.pj_per_bit_per_stage * pk.pipeline_stages +
                                 cfg.energy.router_energy_pj_per_flit * pk.hops);
        bytes += static_cast<double>(pk.flits) * cfg.flit_bytes;
    };
    for (;;) {
        const long now = sim.now();
        if (now == warm)
            sim.reset_link_counters();
        if (now == end) {
            util.resize(g.links.size());
            for (size_t l = 0; l < util.size(); ++l)
                util[l] = static_cast<double>(sim.link_flits()[l]) / static_cast<double>(cfg.measure_cycles);
        }
        if (now >= end && outstanding == 0)
            break;
        if (now >= cap) {
            rep.saturated_drain = true;
            break;
        }
        if (sim.flits_in_network() > 0 && now - sim.last_progress() > cfg.watchdog_cycles) {
            rep.deadlock = true;
            break;
        }
        if (sim.empty()) {
            long target = *std::min_element(next.begin(), next.end());
            if (now < warm)
                target = std::min(target, warm);
            if (now <= end)
                target = std::min(target, end);
            if (target > now) {
                sim.skip_to(target);
                continue;
            }
        }
        for (int e = 0; e < ne; ++e) {
            if (next[e] != now)
                continue;
            const bool measured = now >= warm && now < end;
            const int dst = gen.destination(e, rng);
            if (measured)
                offered += F;
            if (sim.source_queue_size(e) < cfg.source_queue_packets) {
                sim.enqueue(e, dst, F, measured);
                if (measured) {
                    accepted += F;
                    ++outstanding;
                    ++rep.measured_packets;
                }
            }
            next[e] = now + 1 + gap(rng);
        }
        sim.step();
        for (long id : sim.take_delivered())
            account(sim.packet(id));
    }
    rep.cycles = sim.now();
    rep.endpoints = injecting;
    rep.audit_violations = sim.audit_violations();
    const double denom = static_cast<double>(injecting) * static_cast<double>(cfg.measure_cycles);
    rep.offered_rate = offered / denom;
    rep.accepted_rate = accepted / denom;
    rep.delivered_rate = window_flits / denom;
    if (rep.delivered_packets > 0) {
        const double n = static_cast<double>(rep.delivered_packets);
        rep.avg_packet_latency = lat / n;
        rep.avg_network_latency = netlat / n;
        rep.avg_hops = hops / n;
        rep.avg_pipeline_stages = stages / n;
        rep.min_latency = minl;
        rep.max_latency = maxl;
        rep.energy_j = energy_pj * 1e-12;
        rep.energy_per_byte_pj = energy_pj / bytes;
    }
    rep.link_utilization = util;
    return rep;
}

std::string report_to_json(const SimReport& r, bool include_links) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "sim_report";
    j["avg_packet_latency_cycles"] = r.avg_packet_latency;
    j["avg_network_latency_cycles"] = r.avg_network_latency;
    j["min_latency_cycles"] = r.min_latency;
    j["max_latency_cycles"] = r.max_latency;
    j["histogram_bin_cycles"] = r.histogram_bin_cycles;
    j["latency_histogram"] = r.latency_histogram;
    j["delivered_packets"] = r.delivered_packets;
    j["measured_packets"] = r.measured_packets;
    j["offered_rate"] = r.offered_rate;
    j["accepted_rate"] = r.accepted_rate;
    j["delivered_rate"] = r.delivered_rate;
    j["avg_hops"] = r.avg_hops;
    j["avg_pipeline_stages"] = r.avg_pipeline_stages;
    j["energy_j"] = r.energy_j;
    j["energy_per_byte_pj"] = r.energy_per_byte_pj;
    j["cycles"] = r.cycles;
    j["endpoints"] = r.endpoints;
    j["saturated_drain"] = r.saturated_drain;
    j["deadlock"] = r.deadlock;
    j["audit_violations"] = r.audit_violations;
    if (include_links)
        j["link_utilization"] = r.link_utilization;
    return j.dump(2);
}

}  // namespace wsnet
