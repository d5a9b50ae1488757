#include "wsnet/polygon.hpp"

#include <cmath>
#include <numbers>

namespace wsnet {

namespace {

double signed_area(std::span<const Point> poly) {
    double a = 0.0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

double cross(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Point intersect(Point p, Point q, Point a, Point b) {
    const double a1 = cross(a, b, p);
    const double a2 = cross(a, b, q);
    const double t = a1 / (a1 - a2);
    return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

}  // namespace

double polygon_area(std::span<const Point> poly) {
    if (poly.size() < 3)
        return 0.0;
    return std::abs(signed_area(poly));
}

Point polygon_centroid(std::span<const Point> poly) {
    const double a = signed_area(poly);
    if (poly.empty())
        return {};
    if (std::abs(a) < 1e-15) {
        Point c;
        for (const Point& p : poly) {
            c.x += p.x;
            c.y += p.y;
        }
        c.x /= poly.size();
        c.y /= poly.size();
        return c;
    }
    double cx = 0.0, cy = 0.0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        const double f = p.x * q.y - q.x * p.y;
        cx += (p.x + q.x) * f;
        cy += (p.y + q.y) * f;
    }
    return {cx / (6.0 * a), cy / (6.0 * a)};
}

Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
    Polygon out = subject;
    const size_t m = clip.size();
    for (size_t e = 0; e < m && !out.empty(); ++e) {
        const Point a = clip[e];
        const Point b = clip[(e + 1) % m];
        Polygon in;
        in.swap(out);
        const size_t n = in.size();
        for (size_t i = 0; i < n; ++i) {
            const Point p = in[i];
            const Point q = in[(i + 1) % n];
            const bool pin = cross(a, b, p) >= 0.0;
            const bool qin = cross(a, b, q) >= 0.0;
            if (pin) {
                out.push_back(p);
                if (!qin)
                    out.push_back(intersect(p, q, a, b));
            } else if (qin) {
                out.push_back(intersect(p, q, a, b));
            }
        }
    }
    if (out.size() < 3)
        out.clear();
    return out;
}

bool point_in_convex(const Polygon& poly, Point p, double eps) {
    const size_t n = poly.size();
    if (n < 3)
        return false;
    for (size_t i = 0; i < n; ++i)
        if (cross(poly[i], poly[(i + 1) % n], p) < -eps)
            return false;
    return true;
}

Polygon make_rect(Point c, double w, double h) {
    return {{c.x - w / 2, c.y - h / 2}, {c.x + w / 2, c.y - h / 2},
            {c.x + w / 2, c.y + h / 2}, {c.x - w / 2, c.y + h / 2}};
}

Polygon rotate_about(const Polygon& poly, Point o, double angle_deg) {
    const double t = angle_deg * std::numbers::pi / 180.0;
    const double c = std::cos(t), s = std::sin(t);
    Polygon out;
    out.reserve(poly.size());
    for (const Point& p : poly) {
        const double dx = p.x - o.x, dy = p.y - o.y;
        out.push_back({o.x + c * dx - s * dy, o.y + s * dx + c * dy});
    }
    return out;
}

}  // namespace wsnet
