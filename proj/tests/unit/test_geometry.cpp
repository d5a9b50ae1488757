#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "wsnet/geometry.hpp"
#include "wsnet/topology.hpp"

using namespace wsnet;

namespace {

bool inside(const ReticleShape& s, Point c, Point p) {
    for (const Polygon& piece : s.footprint(c))
        if (point_in_convex(piece, p, 0.0))
            return true;
    return false;
}

double mc_overlap(const ReticleShape& a, Point ca, const ReticleShape& b, Point cb, int samples,
                  std::mt19937_64& rng) {
    const Point ha = a.half_extent();
    const double x0 = ca.x - ha.x, x1 = ca.x + ha.x, y0 = ca.y - ha.y, y1 = ca.y + ha.y;
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    int hit = 0;
    for (int i = 0; i < samples; ++i) {
        const Point p{ux(rng), uy(rng)};
        hit += inside(a, ca, p) && inside(b, cb, p);
    }
    return (x1 - x0) * (y1 - y0) * hit / samples;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("unit squares offset by half") {
    const auto sq = ReticleShape::rect(1, 1);
    CHECK(overlap_area(sq, {0, 0}, sq, {0.5, 0}) == doctest::Approx(0.5));
    CHECK(overlap_area(sq, {0, 0}, sq, {1.5, 0}) == doctest::Approx(0.0));
}

TEST_CASE("clip matches analytic rectangles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5, 5), s(0.5, 6);
    for (int i = 0; i < 200; ++i) {
        const double w1 = s(rng), h1 = s(rng), w2 = s(rng), h2 = s(rng);
        const Point c1{u(rng), u(rng)}, c2{u(rng), u(rng)};
        const double ox = std::max(0.0, std::min(c1.x + w1 / 2, c2.x + w2 / 2) -
                                            std::max(c1.x - w1 / 2, c2.x - w2 / 2));
        const double oy = std::max(0.0, std::min(c1.y + h1 / 2, c2.y + h2 / 2) -
                                            std::max(c1.y - h1 / 2, c2.y - h2 / 2));
        CHECK(overlap_area(ReticleShape::rect(w1, h1), c1, ReticleShape::rect(w2, h2), c2) ==
              doctest::Approx(ox * oy).epsilon(1e-9));
    }
}

TEST_CASE("monte carlo overlap for rotated and rectilinear shapes") {
    std::mt19937_64 rng(11);
    const auto rot = ReticleShape::rotated_rect(22.98, 32.53, 45.0);
    const auto rect = ReticleShape::rect(26, 33);
    const auto plus = contoured_plus(4.0);
    const auto h = contoured_h(4.0);
    struct Case {
        ReticleShape a;
        Point ca;
        ReticleShape b;
        Point cb;
    };
    const std::vector<Case> cases{
        {rect, {0, 0}, rot, {10, 7}},
        {rot, {0, 0}, rot, {16, 3}},
        {plus, {0, 0}, h, {20, 12}},
        {h, {0, 0}, rect, {-9, 14}},
    };
    for (const auto& c : cases) {
        const double exact = overlap_area(c.a, c.ca, c.b, c.cb);
        const double est = mc_overlap(c.a, c.ca, c.b, c.cb, 400000, rng);
        CHECK(exact > 1.0);
        CHECK(std::abs(est - exact) < 0.02 * exact + 2.0);
    }
}

TEST_CASE("polygon area and centroid") {
    const Polygon sq = make_rect({3, -2}, 4, 2);
    CHECK(polygon_area(sq) == doctest::Approx(8.0));
    CHECK(polygon_centroid(sq).x == doctest::Approx(3.0));
    CHECK(polygon_centroid(sq).y == doctest::Approx(-2.0));
    const Polygon r = rotate_about(sq, {0, 0}, 30);
    CHECK(polygon_area(r) == doctest::Approx(8.0));
}

TEST_CASE("connector area from bandwidth") {
    CHECK(min_connector_area(2e12, 1e9, 10) == doctest::Approx(3.2));
    CHECK(min_connector_area(6e12, 1e9, 10) == doctest::Approx(9.6));
    CHECK(min_connector_area(2e12, 1e9, 0) == doctest::Approx(0.0));
}

TEST_CASE("fits on wafer") {
    const auto r = ReticleShape::rect(26, 33);
    CHECK(fits_on_wafer(r, {0, 0}, 200));
    CHECK_FALSE(fits_on_wafer(r, {90, 0}, 200));
    // corner exactly on the edge
    const double d = 2 * std::hypot(13.0, 16.5);
    CHECK(fits_on_wafer(r, {0, 0}, d));
}

TEST_CASE("tiny wafer is empty with a warning") {
    for (Scheme s : {Scheme::Baseline, Scheme::Aligned, Scheme::Rotated}) {
        const auto p = generate_placement({30, Integration::LogicOnInterconnect,
                                           Utilization::Maximized},
                                          s);
        CHECK(p.reticles.empty());
        CHECK_FALSE(p.warnings.empty());
    }
}

TEST_CASE("contoured requires logic on logic") {
    CHECK_THROWS_AS(generate_placement({300, Integration::LogicOnInterconnect,
                                        Utilization::Maximized},
                                       Scheme::Contoured),
                    DomainError);
    CHECK_THROWS_AS(generate_placement({300, Integration::LogicOnLogic, Utilization::Maximized},
                                       Scheme::Rotated),
                    DomainError);
}

TEST_CASE("baseline interior connectors are 214.5") {
    const auto p = generate_placement({200, Integration::LogicOnInterconnect,
                                       Utilization::Rectangular},
                                      Scheme::Baseline);
    std::map<int, std::vector<double>> per_ic;
    for (const auto& o : p.overlaps)
        per_ic[o.bottom_id].push_back(o.area_mm2);
    int interior = 0;
    for (const auto& [id, areas] : per_ic) {
        if (areas.size() != 4)
            continue;
        ++interior;
        for (double a : areas)
            CHECK(a == doctest::Approx(214.5));
    }
    CHECK(interior > 0);
}

TEST_CASE("aligned smallest connector is 45.5") {
    const auto p = generate_placement({300, Integration::LogicOnInterconnect,
                                       Utilization::Rectangular},
                                      Scheme::Aligned);
    double lo = 1e9;
    for (const auto& o : p.overlaps)
        lo = std::min(lo, o.area_mm2 / o.multiplicity);
    CHECK(lo == doctest::Approx(45.5));
}

TEST_CASE("placements stay on the wafer and layers do not self overlap") {
    for (Scheme s : {Scheme::Baseline, Scheme::Aligned, Scheme::Interleaved, Scheme::Rotated}) {
        const auto p = generate_placement({200, Integration::LogicOnInterconnect,
                                           Utilization::Maximized},
                                          s);
        for (const auto& r : p.reticles)
            CHECK(fits_on_wafer(r.shape, r.center, 200));
        for (size_t i = 0; i < p.reticles.size(); ++i)
            for (size_t j = i + 1; j < p.reticles.size(); ++j) {
                const auto& a = p.reticles[i];
                const auto& b = p.reticles[j];
                if (a.layer != b.layer)
                    continue;
                CHECK(overlap_area(a.shape, a.center, b.shape, b.center) < 1e-6);
            }
        for (const auto& o : p.overlaps)
            CHECK(o.area_mm2 + 1e-9 >= p.min_connector_area_mm2);
    }
}

TEST_CASE("contoured footprint stays within the reticle limit") {
    const auto p = generate_placement({300, Integration::LogicOnLogic, Utilization::Maximized},
                                      Scheme::Contoured);
    for (const auto& r : p.reticles)
        CHECK(r.shape.area() <= kReticleLimitMm2 + 1e-6);
}

TEST_CASE("placement json round trip") {
    for (Scheme s : {Scheme::Baseline, Scheme::Rotated}) {
        const auto p = generate_placement({200, Integration::LogicOnInterconnect,
                                           Utilization::Rectangular},
                                          s);
        CHECK(placement_from_json(placement_to_json(p)) == p);
    }
    const auto c = generate_placement({200, Integration::LogicOnLogic, Utilization::Maximized},
                                      Scheme::Contoured);
    CHECK(placement_from_json(placement_to_json(c)) == c);
}

TEST_CASE("svg has both layers") {
    const auto p = generate_placement({200, Integration::LogicOnInterconnect,
                                       Utilization::Rectangular},
                                      Scheme::Aligned);
    const std::string svg = placement_to_svg(p);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("top") != std::string::npos);
    CHECK(svg.find("bottom") != std::string::npos);
}

TEST_CASE("quarter turn preserves the network") {
    for (Scheme s : {Scheme::Baseline, Scheme::Interleaved, Scheme::Rotated}) {
        const auto p = generate_placement({200, Integration::LogicOnInterconnect,
                                           Utilization::Maximized},
                                          s);
        auto q = rotate_placement90(p);
        q.overlaps = compute_overlaps(q, p.min_connector_area_mm2);
        CHECK(q.reticles.size() == p.reticles.size());
        CHECK(q.overlaps.size() == p.overlaps.size());
        double ap = 0, aq = 0;
        for (const auto& o : p.overlaps)
            ap += o.area_mm2;
        for (const auto& o : q.overlaps)
            aq += o.area_mm2;
        CHECK(aq == doctest::Approx(ap));
        BisectionOptions bo;
        bo.runs = 2;
        const auto m1 = reticle_metrics(build_network(p), bo);
        const auto m2 = reticle_metrics(build_network(q), bo);
        CHECK(m1.compute_count == m2.compute_count);
        CHECK(m1.compute_radix == m2.compute_radix);
        CHECK(m1.interconnect_radix == m2.interconnect_radix);
        CHECK(m1.diameter_hops == m2.diameter_hops);
        CHECK(m1.avg_path_length_hops == doctest::Approx(m2.avg_path_length_hops));
    }
}

TEST_CASE("offset search serial and parallel agree") {
    PlacementParams pp;
    pp.rotated_max_step_mm = 0.5;
    CHECK(rotated_offset_search(200, pp) == rotated_offset_search_serial(200, pp));
}

TEST_CASE("placement is deterministic") {
    const WaferSpec w{300, Integration::LogicOnInterconnect, Utilization::Maximized};
    CHECK(generate_placement(w, Scheme::Rotated) == generate_placement(w, Scheme::Rotated));
}

}
