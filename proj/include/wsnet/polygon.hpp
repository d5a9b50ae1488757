#pragma once

#include <span>
#include <vector>

namespace wsnet {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Convex polygon, vertices in counter-clockwise order.
using Polygon = std::vector<Point>;

double polygon_area(std::span<const Point> poly);
Point polygon_centroid(std::span<const Point> poly);

// Sutherland-Hodgman clip of a convex subject against a convex clip polygon.
Polygon clip_convex(const Polygon& subject, const Polygon& clip);

bool point_in_convex(const Polygon& poly, Point p, double eps = 1e-9);

Polygon make_rect(Point center, double w, double h);
Polygon rotate_about(const Polygon& poly, Point origin, double angle_deg);

}  // namespace wsnet
