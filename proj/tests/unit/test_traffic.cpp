#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "wsnet/traffic.hpp"

using namespace wsnet;

namespace {

std::vector<Point> row(int n) {
    std::vector<Point> c;
    for (int i = 0; i < n; ++i)
        c.push_back({double(i) * 30, 0});
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kPing = R"(num_ranks 2
rank 0 {
a: send 2048b to 1
}
rank 1 {
b: recv 2048b from 0
}
)";

}  // namespace

TEST_SUITE("traffic") {

TEST_CASE("uniform from one source") {
    TrafficSpec s;
    s.pattern = Pattern::Uniform;
    TrafficGenerator gen(row(8), s);
    Rng rng(42);
    std::vector<int> hits(8, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        ++hits[gen.destination(3, rng)];
    CHECK(hits[3] == 0);
    for (int d = 0; d < 8; ++d)
        if (d != 3)
            CHECK(std::abs(hits[d] / double(draws) - 1.0 / 7.0) < 0.005);
}

TEST_CASE("permutation is a derangement") {
    for (int n = 2; n < 60; ++n)
        for (uint64_t seed : {1, 2, 99}) {
            const auto p = derangement(n, seed);
            std::vector<int> sorted = p;
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> id(n);
            std::iota(id.begin(), id.end(), 0);
            CHECK(sorted == id);
            for (int i = 0; i < n; ++i)
                CHECK(p[i] != i);
        }
    CHECK(derangement(20, 1) == derangement(20, 1));
    CHECK(derangement(20, 1) != derangement(20, 2));
}

TEST_CASE("tornado halfway around") {
    const auto m = tornado_map(row(4));
    CHECK(m[1] == 3);
    CHECK(m[0] == 2);
    CHECK(m[3] == 1);
}

TEST_CASE("neighbor picks the closest other endpoint") {
    const std::vector<Point> c{{0, 0}, {1, 0}, {10, 0}, {12, 0}};
    const auto m = neighbor_map(c);
    CHECK(m == std::vector<int>{1, 0, 3, 2});
}

TEST_CASE("hotspot") {
    TrafficSpec s;
    s.pattern = Pattern::Hotspot;
    s.hotspot = 2;
    TrafficGenerator gen(row(5), s);
    Rng rng(1);
    for (int src : {0, 1, 3, 4}) {
        CHECK(gen.injects(src));
        CHECK(gen.destination(src, rng) == 2);
    }
    CHECK_FALSE(gen.injects(2));
    s.hotspot = 9;
    CHECK_THROWS_AS(TrafficGenerator(row(5), s), TrafficError);
}

TEST_CASE("pattern names") {
    for (Pattern p : {Pattern::Uniform, Pattern::Permutation, Pattern::Neighbor, Pattern::Tornado,
                      Pattern::Hotspot})
        CHECK(parse_pattern(to_string(p)) == p);
    CHECK_THROWS(parse_pattern("bitrev"));
}

TEST_CASE("packet counts") {
    CHECK(packets_for_message(4096) == 2);
    CHECK(packets_for_message(4097) == 3);
    CHECK(packets_for_message(0) == 1);
    const long long big = (18LL << 20) / 10 + 1;  // 1.8 MiB rounded up
    CHECK(packets_for_message(big) == 922);
}

TEST_CASE("parse ping") {
    const Trace t = parse_trace(kPing);
    CHECK(t.num_ranks == 2);
    CHECK(t.ranks[0].size() + t.ranks[1].size() == 2);
    const auto m = match_messages(t);
    REQUIRE(m.size() == 1);
    CHECK(m[0].send_rank == 0);
    CHECK(m[0].recv_rank == 1);
}

TEST_CASE("empty trace") {
    const Trace t = parse_trace("");
    CHECK(t.num_ranks == 0);
    CHECK(t.ranks.empty());
}

TEST_CASE("trace errors") {
    SUBCASE("requires cycle names the cycle") {
        const std::string text = "num_ranks 1\nrank 0 {\na: calc 1\nb: calc 1\na requires b\n"
                                 "b requires a\n}\n";
        try {
            check_acyclic(parse_trace(text));
            FAIL("no error");
        } catch (const TraceError& e) {
            const std::string what = e.what();
            CHECK(what.find("cycle") != std::string::npos);
            CHECK(what.find("0:a") != std::string::npos);
            CHECK(what.find("0:b") != std::string::npos);
        }
    }
    SUBCASE("cycle through a message") {
        const std::string text = "num_ranks 2\nrank 0 {\nr: recv 8 from 1\ns: send 8 to 1\n"
                                 "s requires r\n}\nrank 1 {\nr: recv 8 from 0\ns: send 8 to 0\n"
                                 "s requires r\n}\n";
        CHECK_THROWS_AS(check_acyclic(parse_trace(text)), TraceError);
    }
    SUBCASE("syntax error carries a line") {
        try {
            parse_trace("num_ranks 1\nrank 0 {\nx: jump 3\n}\n");
            FAIL("no error");
        } catch (const TraceError& e) {
            CHECK(e.line == 3);
        }
    }
    SUBCASE("unmatched send") {
        CHECK_THROWS_AS(match_messages(parse_trace("num_ranks 2\nrank 0 {\na: send 8 to 1\n}\n"
                                                   "rank 1 {\n}\n")),
                        TraceError);
    }
    SUBCASE("unknown label") {
        CHECK_THROWS_AS(parse_trace("num_ranks 1\nrank 0 {\na: calc 1\na requires q\n}\n"),
                        TraceError);
    }
    SUBCASE("self message") {
        CHECK_THROWS_AS(parse_trace("num_ranks 1\nrank 0 {\na: send 8 to 0\n}\n"), TraceError);
    }
}

TEST_CASE("trace round trip") {
    for (const char* f : {"ping.goal", "ring_allreduce8.goal", "incast8.goal"}) {
        const Trace t = parse_trace(slurp(std::string(WSNET_FIXTURES) + "/traces/" + f));
        CHECK(t.num_ranks > 0);
        CHECK(parse_trace(serialize_trace(t)) == t);
        CHECK_NOTHROW(check_acyclic(t));
    }
}

TEST_CASE("tags keep messages apart") {
    const std::string text = "num_ranks 2\nrank 0 {\na: send 10 to 1 tag 5\nb: send 20 to 1 tag 6\n}\n"
                             "rank 1 {\nx: recv 20 from 0 tag 6\ny: recv 10 from 0 tag 5\n}\n";
    const auto m = match_messages(parse_trace(text));
    REQUIRE(m.size() == 2);
    for (const auto& mm : m)
        CHECK(mm.send_event != mm.recv_event);
}

}
