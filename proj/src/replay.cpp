#include <algorithm>
#include <climits>
#include <queue>

#include "wsnet/simnet.hpp"

namespace wsnet {

ReplayReport replay_trace(const NetworkGraph& g, const RoutingTables& t, const Trace& trace,
                          const SimConfig& cfg) {
    cfg.validate();
    if (trace.num_ranks > g.endpoint_count())
        throw TraceError("trace has more ranks than compute endpoints");
    check_acyclic(trace);
    const auto matches = match_messages(trace);
    const int nr = trace.num_ranks;
    const int flits = static_cast<int>((kTracePacketBytes + cfg.flit_bytes - 1) / cfg.flit_bytes);

    ReplayReport rep;
    rep.event_start.resize(nr);
    rep.event_end.resize(nr);
    rep.send_packets.resize(nr);
    std::vector<std::vector<int>> waiting(nr);       // unfinished requirements
    std::vector<std::vector<long>> ready(nr);        // latest requirement completion
    std::vector<std::vector<std::vector<int>>> dependents(nr);
    std::vector<std::vector<long>> outstanding(nr);  // packets in flight per send
    std::vector<std::vector<long>> arrived(nr);      // last tail arrival per send
    std::vector<std::vector<std::pair<int, int>>> recv_of(nr), send_of(nr);
    long total = 0;
    for (int r = 0; r < nr; ++r) {
        const size_t n = trace.ranks[r].size();
        total += static_cast<long>(n);
        rep.event_start[r].assign(n, -1);
        rep.event_end[r].assign(n, -1);
        rep.send_packets[r].resize(n);
        waiting[r].assign(n, 0);
        ready[r].assign(n, 0);
        dependents[r].resize(n);
        outstanding[r].assign(n, 0);
        arrived[r].assign(n, -1);
        recv_of[r].assign(n, {-1, -1});
        send_of[r].assign(n, {-1, -1});
        for (size_t i = 0; i < n; ++i)
            for (int d : trace.ranks[r][i].requires_) {
                ++waiting[r][i];
                dependents[r][d].push_back(static_cast<int>(i));
            }
    }
    for (const auto& m : matches) {
        recv_of[m.send_rank][m.send_event] = {m.recv_rank, m.recv_event};
        send_of[m.recv_rank][m.recv_event] = {m.send_rank, m.send_event};
    }

    Simulator sim(g, t, cfg);
    using Item = std::tuple<long, int, int>;  // (cycle, rank, event)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> starts, finishes;
    for (int r = 0; r < nr; ++r)
        for (int i = 0; i < static_cast<int>(trace.ranks[r].size()); ++i)
            if (waiting[r][i] == 0)
                starts.push({0, r, i});
    long done = 0;
    std::vector<std::vector<char>> started(nr);
    for (int r = 0; r < nr; ++r)
        started[r].assign(trace.ranks[r].size(), 0);

    auto try_finish_recv = [&](int r, int i) {
        const auto [sr, si] = send_of[r][i];
        if (!started[r][i] || rep.event_end[r][i] >= 0 || outstanding[sr][si] != 0 || arrived[sr][si] < 0)
            return;
        finishes.push({std::max(rep.event_start[r][i], arrived[sr][si]), r, i});
        rep.event_end[r][i] = LONG_MAX;  // scheduled
    };

    double zero_load = 0;
    for (;;) {
        const long now = sim.now();
        while (!finishes.empty() && std::get<0>(finishes.top()) <= now) {
            const auto [c, r, i] = finishes.top();
            finishes.pop();
            rep.event_end[r][i] = c;
            ++done;
            for (int d : dependents[r][i]) {
                ready[r][d] = std::max(ready[r][d], c);
                if (--waiting[r][d] == 0)
                    starts.push({ready[r][d], r, d});
            }
        }
        while (!starts.empty() && std::get<0>(starts.top()) <= now) {
            const auto [c, r, i] = starts.top();
            starts.pop();
            const auto& e = trace.ranks[r][i];
            started[r][i] = 1;
            rep.event_start[r][i] = now;
            switch (e.kind) {
            case TraceEvent::Kind::Calc:
                finishes.push({now + e.cycles, r, i});
                break;
            case TraceEvent::Kind::Send: {
                const long n = packets_for_message(e.bytes);
                outstanding[r][i] = n;
                for (long k = 0; k < n; ++k)
                    rep.send_packets[r][i].push_back(
                        sim.enqueue(r, e.peer, flits, true, static_cast<long>(r) << 32 | i));
                break;
            }
            case TraceEvent::Kind::Recv:
                try_finish_recv(r, i);
                break;
            }
        }
        if (!finishes.empty() && std::get<0>(finishes.top()) <= now)
            continue;
        if (done == total)
            break;
        if (sim.empty()) {
            long next = LONG_MAX;
            if (!finishes.empty())
                next = std::min(next, std::get<0>(finishes.top()));
            if (!starts.empty())
                next = std::min(next, std::get<0>(starts.top()));
            if (next == LONG_MAX)
                throw SimError("replay stalled with unfinished events");
            if (next > now) {
                sim.skip_to(next);
                continue;
            }
        }
        if (sim.flits_in_network() > 0 && now - sim.last_progress() > cfg.watchdog_cycles) {
            rep.sim.deadlock = true;
            break;
        }
        sim.step();
        for (long id : sim.take_delivered()) {
            const PacketRecord& p = sim.packet(id);
            const int r = static_cast<int>(p.user >> 32);
            const int i = static_cast<int>(p.user & 0xffffffff);
            arrived[r][i] = std::max(arrived[r][i], p.tail_arrival);
            if (--outstanding[r][i] == 0) {
                finishes.push({p.tail_arrival, r, i});
                const auto [rr, ri] = recv_of[r][i];
                try_finish_recv(rr, ri);
            }
        }
    }

    SimReport& s = rep.sim;
    rep.packets = sim.packets();
    double lat = 0, netlat = 0, hops = 0, stages = 0, energy = 0, bytes = 0;
    long minl = LONG_MAX, maxl = 0;
    for (const auto& p : rep.packets) {
        if (p.tail_arrival < 0)
            continue;
        ++s.delivered_packets;
        const long l = p.latency();
        lat += static_cast<double>(l);
        netlat += static_cast<double>(p.tail_arrival - p.head_departure);
        hops += p.hops;
        stages += p.pipeline_stages;
        minl = std::min(minl, l);
        maxl = std::max(maxl, l);
        const size_t bin = static_cast<size_t>(l / s.histogram_bin_cycles);
        if (s.latency_histogram.size() <= bin)
            s.latency_histogram.resize(bin + 1, 0);
        ++s.latency_histogram[bin];
        zero_load += static_cast<double>(
            idle_latency(p.hops, p.link_latency_sum, p.flits, cfg.router_latency_cycles));
        energy += p.flits * (cfg.flit_bytes * 8.0 * cfg.energy.pj_per_bit_per_stage * p.pipeline_stages +
                             cfg.energy.router_energy_pj_per_flit * p.hops);
        bytes += static_cast<double>(p.flits) * cfg.flit_bytes;
    }
    s.measured_packets = static_cast<long>(rep.packets.size());
    rep.makespan = 0;
    for (int r = 0; r < nr; ++r)
        for (long c : rep.event_end[r])
            rep.makespan = std::max(rep.makespan, c);
    s.cycles = sim.now();
    s.endpoints = nr;
    s.audit_violations = sim.audit_violations();
    if (s.delivered_packets > 0) {
        const double n = static_cast<double>(s.delivered_packets);
        s.avg_packet_latency = lat / n;
        s.avg_network_latency = netlat / n;
        s.avg_hops = hops / n;
        s.avg_pipeline_stages = stages / n;
        s.min_latency = minl;
        s.max_latency = maxl;
        s.energy_j = energy * 1e-12;
        s.energy_per_byte_pj = energy / bytes;
        rep.zero_load_latency = zero_load / n;
        const double span = static_cast<double>(std::max(1L, rep.makespan)) * nr;
        s.offered_rate = s.accepted_rate = s.delivered_rate = bytes / cfg.flit_bytes / span;
    }
    return rep;
}

}  // namespace wsnet
