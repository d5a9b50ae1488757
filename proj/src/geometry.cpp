#include "wsnet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace wsnet {

namespace {

std::string lower(std::string s) {
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Full-width overlap of an Aligned/Interleaved interconnect reticle (26 x 13 mm).
constexpr double kFullWidthOverlapMm2 = kReticleShortMm * kReticleShortMm / 2.0;

}  // namespace

std::string to_string(Integration v) {
    return v == Integration::LogicOnInterconnect ? "LoI" : "LoL";
}

std::string to_string(Utilization v) {
    return v == Utilization::Rectangular ? "Rectangular" : "Maximized";
}

std::string to_string(Scheme v) {
    switch (v) {
    case Scheme::Baseline: return "Baseline";
    case Scheme::Aligned: return "Aligned";
    case Scheme::Interleaved: return "Interleaved";
    case Scheme::Rotated: return "Rotated";
    case Scheme::Contoured: return "Contoured";
    }
    return "?";
}

std::string to_string(Layer v) { return v == Layer::Top ? "top" : "bottom"; }

std::string to_string(ReticleKind v) {
    return v == ReticleKind::Compute ? "compute" : "interconnect";
}

Integration parse_integration(const std::string& s) {
    const std::string l = lower(s);
    if (l == "loi" || l == "logiconinterconnect")
        return Integration::LogicOnInterconnect;
    if (l == "lol" || l == "logiconlogic")
        return Integration::LogicOnLogic;
    throw DomainError("unknown integration: " + s);
}

Utilization parse_utilization(const std::string& s) {
    const std::string l = lower(s);
    if (l == "rect" || l == "rectangular" || l == "rec")
        return Utilization::Rectangular;
    if (l == "max" || l == "maximized")
        return Utilization::Maximized;
    throw DomainError("unknown utilization: " + s);
}

Scheme parse_scheme(const std::string& s) {
    const std::string l = lower(s);
    if (l == "baseline") return Scheme::Baseline;
    if (l == "aligned") return Scheme::Aligned;
    if (l == "interleaved") return Scheme::Interleaved;
    if (l == "rotated") return Scheme::Rotated;
    if (l == "contoured") return Scheme::Contoured;
    throw DomainError("unknown scheme: " + s);
}

bool scheme_valid_for(Scheme scheme, Integration integration) {
    switch (scheme) {
    case Scheme::Baseline: return true;
    case Scheme::Contoured: return integration == Integration::LogicOnLogic;
    default: return integration == Integration::LogicOnInterconnect;
    }
}

double min_connector_area(double bandwidth, double clock_hz, double pitch_um) {
    if (!(bandwidth > 0) || !(clock_hz > 0) || !(pitch_um >= 0))
        throw DomainError("min_connector_area: bandwidth and clock must be positive");
    const double wires = bandwidth * 8.0 / clock_hz;
    const double pitch_mm = pitch_um * 1e-3;
    return 2.0 * wires * pitch_mm * pitch_mm;
}

double PlacementParams::min_connector_area_mm2() const {
    return min_connector_area(link_bandwidth_bytes_per_s, clock_hz, hb_pitch_um);
}

ReticleShape ReticleShape::rect(double w, double h) {
    if (!(w > 0) || !(h > 0))
        throw DomainError("rect dimensions must be positive");
    ReticleShape s;
    s.kind_ = Kind::Rect;
    s.w_ = w;
    s.h_ = h;
    return s;
}

ReticleShape ReticleShape::rotated_rect(double w, double h, double angle_deg) {
    if (!(w > 0) || !(h > 0))
        throw DomainError("rotated rect dimensions must be positive");
    ReticleShape s;
    s.kind_ = Kind::RotatedRect;
    s.w_ = w;
    s.h_ = h;
    s.angle_ = angle_deg;
    return s;
}

ReticleShape ReticleShape::rectilinear(std::vector<AxisRect> pieces) {
    if (pieces.empty())
        throw DomainError("rectilinear shape needs at least one piece");
    for (const AxisRect& r : pieces)
        if (!(r.x1 > r.x0) || !(r.y1 > r.y0))
            throw DomainError("rectilinear piece with non-positive extent");
    for (size_t i = 0; i < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j) {
            const AxisRect& a = pieces[i];
            const AxisRect& b = pieces[j];
            const double ox = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
            const double oy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
            if (ox > kGeomEps && oy > kGeomEps)
                throw DomainError("rectilinear pieces overlap");
        }
    ReticleShape s;
    s.kind_ = Kind::Rectilinear;
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const AxisRect& r : pieces) {
        x0 = std::min(x0, r.x0);
        y0 = std::min(y0, r.y0);
        x1 = std::max(x1, r.x1);
        y1 = std::max(y1, r.y1);
    }
    s.w_ = x1 - x0;
    s.h_ = y1 - y0;
    s.pieces_ = std::move(pieces);
    return s;
}

double ReticleShape::area() const {
    if (kind_ != Kind::Rectilinear)
        return w_ * h_;
    double a = 0;
    for (const AxisRect& r : pieces_)
        a += r.area();
    return a;
}

std::vector<Polygon> ReticleShape::footprint(Point c) const {
    switch (kind_) {
    case Kind::Rect:
        return {make_rect(c, w_, h_)};
    case Kind::RotatedRect:
        return {rotate_about(make_rect(c, w_, h_), c, angle_)};
    case Kind::Rectilinear: {
        std::vector<Polygon> out;
        out.reserve(pieces_.size());
        for (const AxisRect& r : pieces_)
            out.push_back({{c.x + r.x0, c.y + r.y0}, {c.x + r.x1, c.y + r.y0},
                           {c.x + r.x1, c.y + r.y1}, {c.x + r.x0, c.y + r.y1}});
        return out;
    }
    }
    return {};
}

Point ReticleShape::half_extent() const {
    if (kind_ == Kind::Rect)
        return {w_ / 2, h_ / 2};
    double ex = 0, ey = 0;
    for (const Polygon& poly : footprint({0, 0}))
        for (const Point& p : poly) {
            ex = std::max(ex, std::abs(p.x));
            ey = std::max(ey, std::abs(p.y));
        }
    return {ex, ey};
}

ReticleShape ReticleShape::rotated90() const {
    switch (kind_) {
    case Kind::Rect:
        return rect(h_, w_);
    case Kind::RotatedRect:
        return rotated_rect(w_, h_, angle_ + 90.0);
    case Kind::Rectilinear: {
        std::vector<AxisRect> rs;
        for (const AxisRect& r : pieces_)
            rs.push_back({-r.y1, r.x0, -r.y0, r.x1});
        return rectilinear(std::move(rs));
    }
    }
    return *this;
}

int Placement::count(ReticleKind kind) const {
    return static_cast<int>(std::count_if(reticles.begin(), reticles.end(),
                                          [&](const PlacedReticle& r) { return r.kind == kind; }));
}

bool fits_on_wafer(const ReticleShape& shape, Point center, double diameter_mm) {
    const double r = diameter_mm / 2.0;
    const double r2 = r * r + kGeomEps;
    for (const Polygon& poly : shape.footprint(center))
        for (const Point& p : poly)
            if (p.x * p.x + p.y * p.y > r2)
                return false;
    return true;
}

double overlap_area(const ReticleShape& a, Point ca, const ReticleShape& b, Point cb,
                    Point* centroid) {
    const Point ea = a.half_extent();
    const Point eb = b.half_extent();
    if (std::abs(ca.x - cb.x) >= ea.x + eb.x || std::abs(ca.y - cb.y) >= ea.y + eb.y)
        return 0.0;
    double total = 0, mx = 0, my = 0;
    for (const Polygon& pa : a.footprint(ca))
        for (const Polygon& pb : b.footprint(cb)) {
            const Polygon inter = clip_convex(pa, pb);
            const double ar = polygon_area(inter);
            if (ar <= 0)
                continue;
            const Point c = polygon_centroid(inter);
            total += ar;
            mx += ar * c.x;
            my += ar * c.y;
        }
    if (centroid && total > 0)
        *centroid = {mx / total, my / total};
    return total;
}

std::vector<OverlapRecord> compute_overlaps(const Placement& placement, double min_area) {
    std::vector<const PlacedReticle*> top, bottom;
    for (const PlacedReticle& r : placement.reticles)
        (r.layer == Layer::Top ? top : bottom).push_back(&r);
    const bool doubled = placement.scheme == Scheme::Aligned ||
                         placement.scheme == Scheme::Interleaved;
    std::vector<OverlapRecord> out;
    for (const PlacedReticle* t : top)
        for (const PlacedReticle* b : bottom) {
            Point c;
            const double ar = overlap_area(t->shape, t->center, b->shape, b->center, &c);
            if (ar <= kGeomEps || ar < min_area - kGeomEps)
                continue;
            OverlapRecord rec;
            rec.top_id = t->id;
            rec.bottom_id = b->id;
            rec.area_mm2 = ar;
            rec.centroid = c;
            rec.multiplicity = 1;
            if (doubled && ar >= kFullWidthOverlapMm2 - kGeomEps &&
                ar >= 2 * min_area - kGeomEps)
                rec.multiplicity = 2;
            out.push_back(rec);
        }
    return out;
}

Placement rotate_placement90(const Placement& p) {
    Placement out = p;
    for (PlacedReticle& r : out.reticles) {
        r.center = {-r.center.y, r.center.x};
        r.shape = r.shape.rotated90();
    }
    for (OverlapRecord& o : out.overlaps)
        o.centroid = {-o.centroid.y, o.centroid.x};
    return out;
}

double contoured_notch_depth(double min_area) {
    return min_area / (kReticleLongMm / 4.0);
}

// Bounding box minus four corner notches of (W/4 x d).
ReticleShape contoured_plus(double d) {
    const double w = kReticleLongMm, h = kReticleShortMm;
    return ReticleShape::rectilinear({
        {-w / 4, -h / 2, w / 4, h / 2},
        {-w / 2, -h / 2 + d, -w / 4, h / 2 - d},
        {w / 4, -h / 2 + d, w / 2, h / 2 - d},
    });
}

// Bounding box minus the top and bottom middle notches of (W/2 x d).
ReticleShape contoured_h(double d) {
    const double w = kReticleLongMm, h = kReticleShortMm;
    return ReticleShape::rectilinear({
        {-w / 2, -h / 2, -w / 4, h / 2},
        {w / 4, -h / 2, w / 2, h / 2},
        {-w / 4, -h / 2 + d, w / 4, h / 2 - d},
    });
}

}  // namespace wsnet
