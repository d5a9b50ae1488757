#include <cmath>
#include <sstream>

#include "json.hpp"
#include "wsnet/geometry.hpp"

namespace wsnet {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

json shape_json(const ReticleShape& s) {
    json j;
    switch (s.kind()) {
    case ReticleShape::Kind::Rect:
        j = {{"kind", "rect"}, {"width_mm", s.width()}, {"height_mm", s.height()}};
        break;
    case ReticleShape::Kind::RotatedRect:
        j = {{"kind", "rotated_rect"},
             {"width_mm", s.width()},
             {"height_mm", s.height()},
             {"angle_deg", s.angle_deg()}};
        break;
    case ReticleShape::Kind::Rectilinear: {
        json pieces = json::array();
        for (const AxisRect& r : s.pieces())
            pieces.push_back({r.x0, r.y0, r.x1, r.y1});
        j = {{"kind", "rectilinear"}, {"pieces", pieces}};
        break;
    }
    }
    return j;
}

ReticleShape shape_from(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "rect")
        return ReticleShape::rect(j.at("width_mm"), j.at("height_mm"));
    if (kind == "rotated_rect")
        return ReticleShape::rotated_rect(j.at("width_mm"), j.at("height_mm"), j.at("angle_deg"));
    if (kind == "rectilinear") {
        std::vector<AxisRect> pieces;
        for (const json& p : j.at("pieces"))
            pieces.push_back({p.at(0), p.at(1), p.at(2), p.at(3)});
        return ReticleShape::rectilinear(std::move(pieces));
    }
    throw DomainError("unknown shape kind: " + kind);
}

}  // namespace

std::string placement_to_json(const Placement& p) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "placement";
    j["wafer"] = {{"diameter_mm", p.spec.diameter_mm},
                  {"integration", to_string(p.spec.integration)},
                  {"utilization", to_string(p.spec.utilization)}};
    j["scheme"] = to_string(p.scheme);
    j["min_connector_area_mm2"] = p.min_connector_area_mm2;
    j["compute_count"] = p.count(ReticleKind::Compute);
    j["interconnect_count"] = p.count(ReticleKind::Interconnect);
    j["warnings"] = p.warnings;
    json rs = json::array();
    for (const PlacedReticle& r : p.reticles)
        rs.push_back({{"id", r.id},
                      {"layer", to_string(r.layer)},
                      {"kind", to_string(r.kind)},
                      {"shape", shape_json(r.shape)},
                      {"center", {r.center.x, r.center.y}}});
    j["reticles"] = rs;
    json os = json::array();
    for (const OverlapRecord& o : p.overlaps)
        os.push_back({{"top_id", o.top_id},
                      {"bottom_id", o.bottom_id},
                      {"area_mm2", o.area_mm2},
                      {"centroid", {o.centroid.x, o.centroid.y}},
                      {"multiplicity", o.multiplicity}});
    j["overlaps"] = os;
    return j.dump(1);
}

Placement placement_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("schema_version", 0) != kSchemaVersion || j.value("type", "") != "placement")
        throw DomainError("not a placement document of schema_version 1");
    Placement p;
    const json& w = j.at("wafer");
    p.spec.diameter_mm = w.at("diameter_mm");
    p.spec.integration = parse_integration(w.at("integration"));
    p.spec.utilization = parse_utilization(w.at("utilization"));
    p.scheme = parse_scheme(j.at("scheme"));
    p.min_connector_area_mm2 = j.at("min_connector_area_mm2");
    p.warnings = j.value("warnings", std::vector<std::string>{});
    for (const json& r : j.at("reticles")) {
        PlacedReticle pr;
        pr.id = r.at("id");
        pr.layer = r.at("layer") == "top" ? Layer::Top : Layer::Bottom;
        pr.kind = r.at("kind") == "compute" ? ReticleKind::Compute : ReticleKind::Interconnect;
        pr.shape = shape_from(r.at("shape"));
        pr.center = {r.at("center").at(0), r.at("center").at(1)};
        if (pr.id != static_cast<int>(p.reticles.size()))
            throw DomainError("reticle ids must be dense and ordered");
        p.reticles.push_back(pr);
    }
    for (const json& o : j.at("overlaps")) {
        OverlapRecord r;
        r.top_id = o.at("top_id");
        r.bottom_id = o.at("bottom_id");
        r.area_mm2 = o.at("area_mm2");
        r.centroid = {o.at("centroid").at(0), o.at("centroid").at(1)};
        r.multiplicity = o.at("multiplicity");
        p.overlaps.push_back(r);
    }
    return p;
}

std::string placement_to_svg(const Placement& p) {
    const double r = p.spec.diameter_mm / 2;
    const double scale = 3.0;
    const double size = (2 * r + 20) * scale;
    auto tx = [&](double x) { return (x + r + 10) * scale; };
    auto ty = [&](double y) { return (r + 10 - y) * scale; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    os << "<title>" << to_string(p.scheme) << ' ' << to_string(p.spec.integration) << ' '
       << p.spec.diameter_mm << "mm " << to_string(p.spec.utilization) << "</title>\n";
    os << "<circle cx=\"" << tx(0) << "\" cy=\"" << ty(0) << "\" r=\"" << r * scale
       << "\" fill=\"#f4f4f4\" stroke=\"#333\"/>\n";
    for (Layer layer : {Layer::Bottom, Layer::Top}) {
        os << "<g id=\"layer-" << to_string(layer) << "\">\n";
        for (const PlacedReticle& pr : p.reticles) {
            if (pr.layer != layer)
                continue;
            const bool compute = pr.kind == ReticleKind::Compute;
            const char* fill = compute ? (layer == Layer::Top ? "#3b7dd8" : "#5bb370") : "#e0a030";
            for (const Polygon& poly : pr.shape.footprint(pr.center)) {
                os << "<polygon points=\"";
                for (const Point& q : poly)
                    os << tx(q.x) << ',' << ty(q.y) << ' ';
                os << "\" fill=\"" << fill << "\" fill-opacity=\"0.45\" stroke=\"" << fill
                   << "\" stroke-width=\"0.5\"/>\n";
            }
        }
        os << "</g>\n";
    }
    os << "<g id=\"connectors\">\n";
    for (const OverlapRecord& o : p.overlaps)
        os << "<circle cx=\"" << tx(o.centroid.x) << "\" cy=\"" << ty(o.centroid.y) << "\" r=\""
           << 1.5 * o.multiplicity << "\" fill=\"#c0392b\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace wsnet
