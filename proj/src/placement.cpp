#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "wsnet/geometry.hpp"

namespace wsnet {

namespace {

struct Layout {
    ReticleShape top_shape;
    ReticleKind top_kind = ReticleKind::Compute;
    std::vector<Point> top;
    ReticleShape bottom_shape;
    ReticleKind bottom_kind = ReticleKind::Interconnect;
    std::vector<Point> bottom;
};

bool rect_fits(double cx, double cy, double w, double h, double r) {
    const double r2 = r * r + kGeomEps;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) {
            const double x = cx + sx * w / 2, y = cy + sy * h / 2;
            if (x * x + y * y > r2)
                return false;
        }
    return true;
}

struct Block {
    int rows = 0, cols = 0;
};

// Largest rows x cols block centered on the wafer; first found wins on ties.
Block grid_block(double r, double w, double h) {
    Block best;
    for (int rows = 1; rows < 20; ++rows)
        for (int cols = 1; cols < 20; ++cols) {
            bool ok = true;
            for (int j = 0; j < rows && ok; ++j)
                for (int i = 0; i < cols && ok; ++i)
                    ok = rect_fits((i - (cols - 1) / 2.0) * w, (j - (rows - 1) / 2.0) * h, w, h, r);
            if (ok && rows * cols > best.rows * best.cols)
                best = {rows, cols};
        }
    return best;
}

std::vector<Point> block_centers(Block b, double w, double h) {
    std::vector<Point> out;
    for (int j = 0; j < b.rows; ++j)
        for (int i = 0; i < b.cols; ++i)
            out.push_back({(i - (b.cols - 1) / 2.0) * w, (j - (b.rows - 1) / 2.0) * h});
    return out;
}

std::vector<Point> lattice(double r, double w, double h, double x0, double y0) {
    std::vector<Point> out;
    const int nj = static_cast<int>(r / h) + 2;
    const int ni = static_cast<int>(r / w) + 2;
    for (int j = -nj; j <= nj; ++j)
        for (int i = -ni; i <= ni; ++i) {
            const double x = x0 + i * w, y = y0 + j * h;
            if (rect_fits(x, y, w, h, r))
                out.push_back({x, y});
        }
    return out;
}

using Key = std::pair<int, int>;

Layout baseline_layout(const WaferSpec& spec) {
    const double r = spec.diameter_mm / 2;
    Layout best;
    Key best_key{-1, -1};
    const std::pair<double, double> orients[] = {{kReticleShortMm, kReticleLongMm},
                                                 {kReticleLongMm, kReticleShortMm}};
    for (auto [w, h] : orients) {
        auto consider = [&](std::vector<Point> comp, std::vector<Point> ic) {
            const Key k{static_cast<int>(comp.size()), static_cast<int>(ic.size())};
            if (k > best_key) {
                best_key = k;
                best.top_shape = ReticleShape::rect(w, h);
                best.bottom_shape = ReticleShape::rect(w, h);
                best.top = std::move(comp);
                best.bottom = std::move(ic);
            }
        };
        if (spec.utilization == Utilization::Rectangular) {
            const Block b = grid_block(r, w, h);
            if (b.rows == 0)
                continue;
            std::vector<Point> ic;
            for (int j = 0; j <= b.rows; ++j)
                for (int i = 0; i <= b.cols; ++i) {
                    const double x = (i - b.cols / 2.0) * w, y = (j - b.rows / 2.0) * h;
                    if (rect_fits(x, y, w, h, r))
                        ic.push_back({x, y});
                }
            consider(block_centers(b, w, h), std::move(ic));
        } else {
            for (double x0 : {0.0, w / 2})
                for (double y0 : {0.0, h / 2})
                    consider(lattice(r, w, h, x0, y0), lattice(r, w, h, x0 + w / 2, y0 + h / 2));
        }
    }
    if (spec.integration == Integration::LogicOnLogic)
        best.bottom_kind = ReticleKind::Compute;
    return best;
}

std::vector<Point> aligned_cells(const WaferSpec& spec) {
    const double r = spec.diameter_mm / 2;
    const double w = kReticleShortMm, h = kReticleLongMm;
    if (spec.utilization == Utilization::Rectangular) {
        const Block b = grid_block(r, w, h);
        return b.rows ? block_centers(b, w, h) : std::vector<Point>{};
    }
    std::vector<Point> best;
    Key best_key{-1, -1};
    for (double x0 : {0.0, w / 2})
        for (double y0 : {0.0, h / 2}) {
            auto cells = lattice(r, w, h, x0, y0);
            const Key k{static_cast<int>(cells.size()),
                        static_cast<int>(lattice(r, w, h, x0 + w / 2, y0 + h / 2).size())};
            if (k > best_key) {
                best_key = k;
                best = std::move(cells);
            }
        }
    return best;
}

// Interconnect reticles (33 wide x 26 tall) sit on row boundaries, centered on
// compute columns of the adjacent rows; column parity selects every other one.
std::vector<Point> aligned_ics(const std::vector<Point>& cells, double r, int parity_even,
                               int parity_odd) {
    const double w = kReticleShortMm, h = kReticleLongMm;
    std::vector<Point> out;
    if (cells.empty())
        return out;
    double xref = cells.front().x;
    for (const Point& c : cells)
        if (std::abs(c.x) < std::abs(xref) - kGeomEps ||
            (std::abs(std::abs(c.x) - std::abs(xref)) <= kGeomEps && c.x < xref))
            xref = c.x;
    double ymin = cells.front().y, ymax = cells.front().y;
    for (const Point& c : cells) {
        ymin = std::min(ymin, c.y);
        ymax = std::max(ymax, c.y);
    }
    const int nrows = static_cast<int>(std::lround((ymax - ymin) / h)) + 1;
    for (int k = 0; k <= nrows; ++k) {
        const double yb = ymin - h / 2 + k * h;
        const int parity = (k % 2 == 0) ? parity_even : parity_odd;
        std::set<long> cols;
        for (const Point& c : cells)
            if (std::abs(std::abs(c.y - yb) - h / 2) < kGeomEps)
                cols.insert(std::lround((c.x - xref) / w));
        for (long col : cols) {
            if (((col % 2) + 2) % 2 != parity)
                continue;
            const double x = xref + col * w;
            if (rect_fits(x, yb, kReticleLongMm, kReticleShortMm, r))
                out.push_back({x, yb});
        }
    }
    return out;
}

Layout aligned_layout(const WaferSpec& spec, Scheme scheme) {
    const double r = spec.diameter_mm / 2;
    Layout l;
    l.top_shape = ReticleShape::rect(kReticleShortMm, kReticleLongMm);
    l.bottom_shape = ReticleShape::rect(kReticleLongMm, kReticleShortMm);
    l.top = aligned_cells(spec);
    if (scheme == Scheme::Aligned) {
        l.bottom = aligned_ics(l.top, r, 1, 1);
    } else {
        auto a = aligned_ics(l.top, r, 0, 1);
        auto b = aligned_ics(l.top, r, 1, 0);
        l.bottom = a.size() > b.size() ? std::move(a) : std::move(b);
    }
    return l;
}

struct RotatedGeom {
    double w = kReticleLongMm, h = kReticleShortMm, shift = 11.5;
    ReticleShape ic;
    double r = 0;

    bool ic_fits(double x, double y) const { return fits_on_wafer(ic, {x, y}, 2 * r); }
};

RotatedGeom rotated_geom(double diameter, const PlacementParams& p) {
    RotatedGeom g;
    g.shift = p.rotated_row_shift_mm;
    g.ic = ReticleShape::rotated_rect(p.rotated_width_mm, p.rotated_height_mm, p.rotated_angle_deg);
    g.r = diameter / 2;
    return g;
}

double wrap(double v, double period) { return v - std::floor(v / period) * period; }

template <class F>
void rotated_max_cells(const RotatedGeom& g, double x0, double y0, F&& emit) {
    const int nj = static_cast<int>(g.r / g.h) + 2;
    const int ni = static_cast<int>(g.r / g.w) + 2;
    for (int j = -nj; j <= nj; ++j) {
        const double cy = y0 + j * g.h;
        const double off = wrap(x0 + j * g.shift, g.w);
        for (int i = -ni; i <= ni; ++i) {
            const double cx = off + i * g.w;
            if (rect_fits(cx, cy, g.w, g.h, g.r))
                emit(cx, cy);
        }
    }
}

Key rotated_max_key(const RotatedGeom& g, double x0, double y0) {
    Key k{0, 0};
    rotated_max_cells(g, x0, y0, [&](double x, double y) {
        ++k.first;
        if (g.ic_fits(x, y))
            ++k.second;
    });
    return k;
}

bool rotated_rect_cells(const RotatedGeom& g, int rows, int cols, double x0, double y0,
                        std::vector<Point>& out) {
    out.clear();
    for (int j = 0; j < rows; ++j) {
        const double cy = y0 + (j - (rows - 1) / 2.0) * g.h;
        const double off = wrap(j * g.shift, g.w);
        for (int i = 0; i < cols; ++i) {
            const double cx = x0 + off + (i - (cols - 1) / 2.0) * g.w;
            if (!rect_fits(cx, cy, g.w, g.h, g.r))
                return false;
            out.push_back({cx, cy});
        }
    }
    return true;
}

int steps(double span, double step) { return static_cast<int>(std::ceil(span / step - 1e-9)); }

Layout rotated_layout(const WaferSpec& spec, const PlacementParams& p) {
    const RotatedGeom g = rotated_geom(spec.diameter_mm, p);
    Layout l;
    l.top_shape = ReticleShape::rect(g.w, g.h);
    l.bottom_shape = g.ic;
    if (spec.utilization == Utilization::Maximized) {
        const OffsetSearchResult s = p.parallel ? rotated_offset_search(spec.diameter_mm, p)
                                                : rotated_offset_search_serial(spec.diameter_mm, p);
        if (s.compute > 0)
            rotated_max_cells(g, s.x0, s.y0, [&](double x, double y) { l.top.push_back({x, y}); });
    } else {
        const double step = p.rotated_rect_step_mm;
        const double win = p.rotated_rect_window_mm;
        const int nx = steps(2 * win, step);
        const int ny = static_cast<int>(std::floor(g.h / step + 1e-9)) + 1;
        const int max_rows = static_cast<int>(spec.diameter_mm / g.h) + 1;
        const int max_cols = static_cast<int>(spec.diameter_mm / g.w) + 1;
        Key best{-1, -1};
        std::vector<Point> cells;
        for (int rows = 1; rows <= max_rows; ++rows)
            for (int cols = 1; cols <= max_cols; ++cols)
                for (int ix = 0; ix < nx; ++ix)
                    for (int iy = 0; iy < ny; ++iy) {
                        const double x0 = -win + ix * step;
                        const double y0 = -g.h / 2 + iy * step;
                        if (!rotated_rect_cells(g, rows, cols, x0, y0, cells))
                            continue;
                        Key k{static_cast<int>(cells.size()), 0};
                        if (k.first < best.first)
                            continue;
                        for (const Point& c : cells)
                            k.second += g.ic_fits(c.x, c.y);
                        if (k > best) {
                            best = k;
                            l.top = cells;
                        }
                    }
    }
    for (const Point& c : l.top)
        if (g.ic_fits(c.x, c.y))
            l.bottom.push_back(c);
    return l;
}

Layout contoured_layout(const WaferSpec& spec, const PlacementParams& p) {
    const double d = contoured_notch_depth(p.min_connector_area_mm2());
    const double w = kReticleLongMm, h = kReticleShortMm;
    const double py = h - d;
    const double r = spec.diameter_mm / 2;
    Layout l;
    l.top_shape = contoured_plus(d);
    l.bottom_shape = contoured_h(d);
    l.bottom_kind = ReticleKind::Compute;
    auto fits_both = [&](double x, double y) {
        return fits_on_wafer(l.top_shape, {x, y}, spec.diameter_mm) &&
               fits_on_wafer(l.bottom_shape, {x, y}, spec.diameter_mm);
    };
    std::vector<Point> best;
    if (spec.utilization == Utilization::Maximized) {
        const int nj = static_cast<int>(r / py) + 2;
        const int ni = static_cast<int>(r / w) + 2;
        for (double x0 : {0.0, w / 4, w / 2, 3 * w / 4})
            for (double y0 : {0.0, py / 2}) {
                std::vector<Point> cells;
                for (int j = -nj; j <= nj; ++j) {
                    const double off = x0 + (((j % 2) + 2) % 2) * w / 2;
                    for (int i = -ni; i <= ni; ++i)
                        if (fits_both(off + i * w, y0 + j * py))
                            cells.push_back({off + i * w, y0 + j * py});
                }
                if (cells.size() > best.size())
                    best = std::move(cells);
            }
    } else {
        const int max_rows = static_cast<int>(spec.diameter_mm / py) + 1;
        const int max_cols = static_cast<int>(spec.diameter_mm / w) + 1;
        for (int rows = 1; rows <= max_rows; ++rows)
            for (int cols = 1; cols <= max_cols; ++cols) {
                if (rows * cols <= static_cast<int>(best.size()))
                    continue;
                std::vector<Point> cells;
                double mx = 0, my = 0;
                for (int j = 0; j < rows; ++j)
                    for (int i = 0; i < cols; ++i) {
                        cells.push_back({(j % 2) * w / 2 + i * w, j * py});
                        mx += cells.back().x;
                        my += cells.back().y;
                    }
                mx /= cells.size();
                my /= cells.size();
                bool ok = true;
                for (Point& c : cells) {
                    c.x -= mx;
                    c.y -= my;
                    ok = ok && fits_both(c.x, c.y);
                }
                if (ok)
                    best = std::move(cells);
            }
    }
    l.top = best;
    l.bottom = best;
    return l;
}

}  // namespace

OffsetSearchResult rotated_offset_search_serial(double diameter, const PlacementParams& p) {
    const RotatedGeom g = rotated_geom(diameter, p);
    const double step = p.rotated_max_step_mm;
    const int nx = steps(g.w, step), ny = steps(g.h, step);
    OffsetSearchResult best;
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy) {
            const double x0 = ix * step, y0 = iy * step;
            const Key k = rotated_max_key(g, x0, y0);
            if (k > Key{best.compute, best.interconnect})
                best = {x0, y0, k.first, k.second};
        }
    return best;
}

OffsetSearchResult rotated_offset_search(double diameter, const PlacementParams& p) {
    const RotatedGeom g = rotated_geom(diameter, p);
    const double step = p.rotated_max_step_mm;
    const int nx = steps(g.w, step), ny = steps(g.h, step);
    std::vector<OffsetSearchResult> per_col(nx);
#pragma omp parallel for schedule(dynamic)
    for (int ix = 0; ix < nx; ++ix) {
        OffsetSearchResult best;
        for (int iy = 0; iy < ny; ++iy) {
            const double x0 = ix * step, y0 = iy * step;
            const Key k = rotated_max_key(g, x0, y0);
            if (k > Key{best.compute, best.interconnect})
                best = {x0, y0, k.first, k.second};
        }
        per_col[ix] = best;
    }
    OffsetSearchResult best;
    for (const OffsetSearchResult& c : per_col)
        if (Key{c.compute, c.interconnect} > Key{best.compute, best.interconnect})
            best = c;
    return best;
}

Placement generate_placement(const WaferSpec& spec, Scheme scheme, const PlacementParams& params) {
    if (!(spec.diameter_mm > 0))
        throw DomainError("wafer diameter must be positive");
    if (!scheme_valid_for(scheme, spec.integration))
        throw DomainError(to_string(scheme) + " is not valid with " + to_string(spec.integration));
    Layout l;
    switch (scheme) {
    case Scheme::Baseline: l = baseline_layout(spec); break;
    case Scheme::Aligned:
    case Scheme::Interleaved: l = aligned_layout(spec, scheme); break;
    case Scheme::Rotated: l = rotated_layout(spec, params); break;
    case Scheme::Contoured: l = contoured_layout(spec, params); break;
    }

    Placement out;
    out.spec = spec;
    out.scheme = scheme;
    out.min_connector_area_mm2 = params.min_connector_area_mm2();
    if (l.top.empty()) {
        out.warnings.push_back("wafer too small for a single reticle");
        return out;
    }
    int id = 0;
    for (const Point& c : l.top)
        out.reticles.push_back({id++, Layer::Top, l.top_kind, l.top_shape, c});
    for (const Point& c : l.bottom)
        out.reticles.push_back({id++, Layer::Bottom, l.bottom_kind, l.bottom_shape, c});
    out.overlaps = compute_overlaps(out, out.min_connector_area_mm2);

    if (scheme == Scheme::Rotated) {
        const double need = min_connector_area(params.rotated_connector_bandwidth, params.clock_hz,
                                               params.hb_pitch_um);
        std::map<int, int> deg;
        for (const OverlapRecord& o : out.overlaps) {
            ++deg[o.bottom_id];
            if (o.area_mm2 < need - kGeomEps)
                out.warnings.push_back("rotated overlap below the wide-link connector area");
        }
        for (auto [ic, n] : deg)
            if (n > 7)
                out.warnings.push_back("rotated interconnect reticle with more than 7 overlaps");
    }
    if (scheme == Scheme::Contoured) {
        const double frac = l.top_shape.area() / kReticleLimitMm2;
        if (std::abs(frac - params.contoured_area_fraction) > params.contoured_fraction_tolerance)
            out.warnings.push_back("contoured area fraction off target");
    }
    return out;
}

}  // namespace wsnet
