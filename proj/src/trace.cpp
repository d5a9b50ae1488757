#include <algorithm>
#include <map>
#include <regex>
#include <sstream>
#include <tuple>

#include "wsnet/traffic.hpp"

namespace wsnet {

TraceError::TraceError(int l, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    std::string r = s.substr(b, e - b + 1);
    if (auto c = r.find('#'); c != std::string::npos)
        r = r.substr(0, c);
    if (auto c = r.find("//"); c != std::string::npos)
        r = r.substr(0, c);
    e = r.find_last_not_of(" \t\r");
    return e == std::string::npos ? "" : r.substr(0, e + 1);
}

const std::regex kNumRanks(R"(num_ranks\s+(\d+))");
const std::regex kRank(R"(rank\s+(\d+)\s*\{)");
const std::regex kSend(R"(([A-Za-z_]\w*)\s*:\s*send\s+(\d+)\s*[bB]?\s+to\s+(\d+)(?:\s+tag\s+(\d+))?)");
const std::regex kRecv(R"(([A-Za-z_]\w*)\s*:\s*recv\s+(\d+)\s*[bB]?\s+from\s+(\d+)(?:\s+tag\s+(\d+))?)");
const std::regex kCalc(R"(([A-Za-z_]\w*)\s*:\s*calc\s+(\d+))");
const std::regex kRequires(R"(([A-Za-z_]\w*)\s+requires\s+([A-Za-z_]\w*))");

}  // namespace

Trace parse_trace(const std::string& text) {
    Trace t;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    int rank = -1;
    bool header = false;
    std::map<std::string, int> labels;
    std::vector<std::tuple<int, std::string, std::string>> pending;
    auto resolve = [&] {
        for (const auto& [l, a, b] : pending) {
            auto ia = labels.find(a), ib = labels.find(b);
            if (ia == labels.end())
                throw TraceError(l, "unknown label " + a);
            if (ib == labels.end())
                throw TraceError(l, "unknown label " + b);
            if (ia->second == ib->second)
                throw TraceError(l, "dependency cycle: " + a + " requires itself");
            t.ranks[rank][ia->second].requires_.push_back(ib->second);
        }
        pending.clear();
        labels.clear();
    };
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = strip(raw);
        if (s.empty())
            continue;
        std::smatch m;
        if (std::regex_match(s, m, kNumRanks)) {
            if (header)
                throw TraceError(line, "duplicate num_ranks");
            header = true;
            t.num_ranks = std::stoi(m[1]);
            t.ranks.assign(t.num_ranks, {});
            continue;
        }
        if (!header)
            throw TraceError(line, "expected num_ranks");
        if (rank < 0) {
            if (!std::regex_match(s, m, kRank))
                throw TraceError(line, "expected rank header");
            rank = std::stoi(m[1]);
            if (rank >= t.num_ranks)
                throw TraceError(line, "rank out of range");
            if (!t.ranks[rank].empty())
                throw TraceError(line, "rank defined twice");
            continue;
        }
        if (s == "}") {
            resolve();
            rank = -1;
            continue;
        }
        TraceEvent e;
        const bool send = std::regex_match(s, m, kSend);
        if (send || std::regex_match(s, m, kRecv)) {
            e.kind = send ? TraceEvent::Kind::Send : TraceEvent::Kind::Recv;
            e.bytes = std::stoll(m[2]);
            e.peer = std::stoi(m[3]);
            e.tag = m[4].matched ? std::stoi(m[4]) : 0;
            if (e.peer >= t.num_ranks)
                throw TraceError(line, "peer out of range");
            if (e.peer == rank)
                throw TraceError(line, "message to self");
        } else if (std::regex_match(s, m, kCalc)) {
            e.kind = TraceEvent::Kind::Calc;
            e.cycles = std::stoll(m[2]);
        } else if (std::regex_match(s, m, kRequires)) {
            pending.emplace_back(line, m[1], m[2]);
            continue;
        } else {
            throw TraceError(line, "syntax error: " + s);
        }
        e.label = m[1];
        if (labels.count(e.label))
            throw TraceError(line, "duplicate label " + e.label);
        labels[e.label] = static_cast<int>(t.ranks[rank].size());
        t.ranks[rank].push_back(e);
    }
    if (rank >= 0)
        throw TraceError(line, "unterminated rank block");
    if (!header)
        return t;
    for (auto& r : t.ranks)
        for (auto& e : r)
            std::sort(e.requires_.begin(), e.requires_.end());
    check_acyclic(t);
    return t;
}

std::string serialize_trace(const Trace& t) {
    std::ostringstream o;
    o << "num_ranks " << t.num_ranks << "\n";
    for (int r = 0; r < t.num_ranks; ++r) {
        const auto& ev = t.ranks[r];
        if (ev.empty())
            continue;
        o << "rank " << r << " {\n";
        auto label = [&](int i) { return ev[i].label.empty() ? "l" + std::to_string(i) : ev[i].label; };
        for (int i = 0; i < static_cast<int>(ev.size()); ++i) {
            const auto& e = ev[i];
            o << label(i) << ": ";
            switch (e.kind) {
            case TraceEvent::Kind::Calc: o << "calc " << e.cycles; break;
            case TraceEvent::Kind::Send: o << "send " << e.bytes << "b to " << e.peer << " tag " << e.tag; break;
            case TraceEvent::Kind::Recv: o << "recv " << e.bytes << "b from " << e.peer << " tag " << e.tag; break;
            }
            o << "\n";
        }
        for (int i = 0; i < static_cast<int>(ev.size()); ++i)
            for (int d : ev[i].requires_)
                o << label(i) << " requires " << label(d) << "\n";
        o << "}\n";
    }
    return o.str();
}

std::vector<MessageMatch> match_messages(const Trace& t) {
    // k-th send r->p with tag x pairs with the k-th matching recv at p.
    std::map<std::tuple<int, int, int>, std::vector<std::pair<int, int>>> sends, recvs;
    for (int r = 0; r < t.num_ranks; ++r)
        for (int i = 0; i < static_cast<int>(t.ranks[r].size()); ++i) {
            const auto& e = t.ranks[r][i];
            if (e.kind == TraceEvent::Kind::Send)
                sends[{r, e.peer, e.tag}].push_back({r, i});
            else if (e.kind == TraceEvent::Kind::Recv)
                recvs[{e.peer, r, e.tag}].push_back({r, i});
        }
    std::vector<MessageMatch> out;
    auto describe = [](const std::tuple<int, int, int>& k) {
        return std::to_string(std::get<0>(k)) + " -> " + std::to_string(std::get<1>(k)) + " tag " +
               std::to_string(std::get<2>(k));
    };
    for (const auto& [k, s] : sends) {
        auto it = recvs.find(k);
        const size_t nr = it == recvs.end() ? 0 : it->second.size();
        if (nr != s.size())
            throw TraceError("unmatched send/recv for " + describe(k));
        for (size_t j = 0; j < s.size(); ++j) {
            const auto [rr, ri] = it->second[j];
            if (t.ranks[s[j].first][s[j].second].bytes != t.ranks[rr][ri].bytes)
                throw TraceError("byte count mismatch for " + describe(k));
            out.push_back({s[j].first, s[j].second, rr, ri});
        }
    }
    for (const auto& [k, r] : recvs)
        if (!sends.count(k))
            throw TraceError("unmatched send/recv for " + describe(k));
    return out;
}

void check_acyclic(const Trace& t) {
    const auto matches = match_messages(t);
    std::vector<int> base(t.num_ranks + 1, 0);
    for (int r = 0; r < t.num_ranks; ++r)
        base[r + 1] = base[r] + static_cast<int>(t.ranks[r].size());
    const int n = base[t.num_ranks];
    // Arcs point from an event to the events it waits for.
    std::vector<std::vector<int>> wait(n);
    for (int r = 0; r < t.num_ranks; ++r)
        for (int i = 0; i < static_cast<int>(t.ranks[r].size()); ++i)
            for (int d : t.ranks[r][i].requires_)
                wait[base[r] + i].push_back(base[r] + d);
    for (const auto& m : matches)
        wait[base[m.recv_rank] + m.recv_event].push_back(base[m.send_rank] + m.send_event);
    auto name = [&](int v) {
        const int r = static_cast<int>(std::upper_bound(base.begin(), base.end(), v) - base.begin()) - 1;
        const auto& e = t.ranks[r][v - base[r]];
        return "rank " + std::to_string(r) + ":" + (e.label.empty() ? "l" + std::to_string(v - base[r]) : e.label);
    };
    std::vector<int> state(n, 0), parent(n, -1);
    for (int s = 0; s < n; ++s) {
        if (state[s])
            continue;
        std::vector<std::pair<int, size_t>> stack{{s, 0}};
        state[s] = 1;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            if (k == wait[v].size()) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            const int w = wait[v][k++];
            if (state[w] == 1) {
                std::string msg = name(w);
                std::vector<int> path;
                for (int x = v; x != w; x = parent[x])
                    path.push_back(x);
                std::reverse(path.begin(), path.end());
                for (int x : path)
                    msg += " <- " + name(x);
                throw TraceError("dependency cycle: " + msg + " <- " + name(w));
            }
            if (state[w] == 0) {
                state[w] = 1;
                parent[w] = v;
                stack.push_back({w, 0});
            }
        }
    }
}

}  // namespace wsnet
