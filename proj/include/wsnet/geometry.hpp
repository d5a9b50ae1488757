#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnet/polygon.hpp"

namespace wsnet {

inline constexpr double kReticleLongMm = 33.0;
inline constexpr double kReticleShortMm = 26.0;
inline constexpr double kReticleLimitMm2 = kReticleLongMm * kReticleShortMm;
inline constexpr double kGeomEps = 1e-6;

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Integration { LogicOnInterconnect, LogicOnLogic };
enum class Utilization { Rectangular, Maximized };
enum class Scheme { Baseline, Aligned, Interleaved, Rotated, Contoured };
enum class Layer { Top, Bottom };
enum class ReticleKind { Compute, Interconnect };

std::string to_string(Integration v);
std::string to_string(Utilization v);
std::string to_string(Scheme v);
std::string to_string(Layer v);
std::string to_string(ReticleKind v);
// Accepts long names and the short CLI spellings (loi, rect, max, ...).
Integration parse_integration(const std::string& s);
Utilization parse_utilization(const std::string& s);
Scheme parse_scheme(const std::string& s);

bool scheme_valid_for(Scheme scheme, Integration integration);

struct WaferSpec {
    double diameter_mm = 300.0;
    Integration integration = Integration::LogicOnInterconnect;
    Utilization utilization = Utilization::Maximized;

    friend bool operator==(const WaferSpec&, const WaferSpec&) = default;
};

struct AxisRect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    double area() const { return (x1 - x0) * (y1 - y0); }
    friend bool operator==(const AxisRect&, const AxisRect&) = default;
};

class ReticleShape {
public:
    enum class Kind { Rect, RotatedRect, Rectilinear };

    ReticleShape() = default;
    static ReticleShape rect(double w, double h);
    static ReticleShape rotated_rect(double w, double h, double angle_deg);
    static ReticleShape rectilinear(std::vector<AxisRect> pieces);

    Kind kind() const { return kind_; }
    double width() const { return w_; }
    double height() const { return h_; }
    double angle_deg() const { return angle_; }
    const std::vector<AxisRect>& pieces() const { return pieces_; }

    double area() const;
    // Convex pieces of the footprint in wafer coordinates.
    std::vector<Polygon> footprint(Point center) const;
    // Axis-aligned bounding half extents.
    Point half_extent() const;
    ReticleShape rotated90() const;

    friend bool operator==(const ReticleShape&, const ReticleShape&) = default;

private:
    Kind kind_ = Kind::Rect;
    double w_ = 0, h_ = 0, angle_ = 0;
    std::vector<AxisRect> pieces_;
};

struct PlacedReticle {
    int id = 0;
    Layer layer = Layer::Top;
    ReticleKind kind = ReticleKind::Compute;
    ReticleShape shape;
    Point center;

    friend bool operator==(const PlacedReticle&, const PlacedReticle&) = default;
};

struct OverlapRecord {
    int top_id = 0;
    int bottom_id = 0;
    double area_mm2 = 0;
    Point centroid;
    int multiplicity = 1;

    friend bool operator==(const OverlapRecord&, const OverlapRecord&) = default;
};

struct PlacementParams {
    double link_bandwidth_bytes_per_s = 2e12;
    double clock_hz = 1e9;
    double hb_pitch_um = 10.0;

    double rotated_width_mm = 22.98;
    double rotated_height_mm = 32.53;
    double rotated_angle_deg = 45.0;
    double rotated_row_shift_mm = 11.5;
    double rotated_connector_bandwidth = 6e12;
    double rotated_max_step_mm = 0.1;
    double rotated_rect_step_mm = 0.5;
    double rotated_rect_window_mm = 20.0;

    double contoured_area_fraction = 0.985;
    double contoured_fraction_tolerance = 0.001;

    bool parallel = true;

    double min_connector_area_mm2() const;
};

struct Placement {
    WaferSpec spec;
    Scheme scheme = Scheme::Baseline;
    std::vector<PlacedReticle> reticles;
    std::vector<OverlapRecord> overlaps;
    double min_connector_area_mm2 = 0;
    std::vector<std::string> warnings;

    int count(ReticleKind kind) const;
    const PlacedReticle& reticle(int id) const { return reticles.at(id); }

    friend bool operator==(const Placement&, const Placement&) = default;
};

double min_connector_area(double bandwidth_bytes_per_s_per_dir, double clock_hz,
                          double hb_pitch_um);

bool fits_on_wafer(const ReticleShape& shape, Point center, double diameter_mm);

double overlap_area(const ReticleShape& a, Point ca, const ReticleShape& b, Point cb,
                    Point* centroid = nullptr);

std::vector<OverlapRecord> compute_overlaps(const Placement& placement,
                                            double min_connector_area_mm2);

Placement generate_placement(const WaferSpec& spec, Scheme scheme,
                             const PlacementParams& params = {});

Placement rotate_placement90(const Placement& placement);

// Contoured reticle outlines (local coordinates, centered at the origin).
ReticleShape contoured_plus(double notch_depth_mm);
ReticleShape contoured_h(double notch_depth_mm);
double contoured_notch_depth(double min_area_mm2);

struct OffsetSearchResult {
    double x0 = 0, y0 = 0;
    int compute = -1;
    int interconnect = -1;

    friend bool operator==(const OffsetSearchResult&, const OffsetSearchResult&) = default;
};

// Exhaustive offset scan for the sheared Rotated lattice on a maximized wafer.
OffsetSearchResult rotated_offset_search(double diameter_mm, const PlacementParams& params);
OffsetSearchResult rotated_offset_search_serial(double diameter_mm,
                                                const PlacementParams& params);

// Serialization (JSON, schema_version 1) and SVG rendering.
std::string placement_to_json(const Placement& p);
Placement placement_from_json(const std::string& text);
std::string placement_to_svg(const Placement& p);

}  // namespace wsnet
