#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "wsnet/matrix.hpp"

namespace wsnet {

namespace {

std::string fmt(double v, int prec = 4) {
    if (!std::isfinite(v))
        return "";
    std::ostringstream o;
    o.precision(prec);
    o << std::fixed << v;
    return o.str();
}

auto order(const MatrixCell& c) {
    return std::make_tuple(static_cast<int>(c.integration), c.diameter_mm,
                           static_cast<int>(c.utilization), static_cast<int>(c.scheme),
                           static_cast<int>(c.selection), static_cast<int>(c.pattern));
}

struct Topo {
    Integration integration;
    double diameter;
    Utilization utilization;
    Scheme scheme;
    std::string error;
    NetworkGraph graph;
    RoutingTables tables;
};

double pct_gain(double v, double base) { return base > 0 ? (v / base - 1.0) * 100.0 : NAN; }
double pct_drop(double v, double base) { return base > 0 ? (base - v) / base * 100.0 : NAN; }

}  // namespace

std::string MatrixCell::key() const {
    std::ostringstream o;
    o << to_string(integration) << "/" << diameter_mm << "/" << to_string(utilization) << "/"
      << to_string(scheme) << "/" << to_string(selection) << "/" << to_string(pattern);
    return o.str();
}

int MatrixResult::failures() const {
    return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const MatrixCell& c) { return !c.ok; }));
}

MatrixResult run_matrix(const MatrixConfig& cfg, std::ostream* progress) {
    std::vector<std::unique_ptr<Topo>> topos;
    for (auto in : cfg.integrations)
        for (double d : cfg.diameters)
            for (auto u : cfg.utilizations)
                for (auto s : cfg.schemes)
                    if (scheme_valid_for(s, in))
                        topos.push_back(std::make_unique<Topo>(Topo{in, d, u, s, {}, {}, {}}));
    const int nt = static_cast<int>(topos.size());
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
    for (int i = 0; i < nt; ++i) {
        Topo& t = *topos[i];
        try {
            const auto p = generate_placement({t.diameter, t.integration, t.utilization}, t.scheme);
            t.graph = build_network(p, cfg.intra);
            t.tables = build_routing(t.graph);
        } catch (const std::exception& e) {
            t.error = e.what();
        }
    }
    struct Job {
        int topo;
        SelectionKind selection;
        Pattern pattern;
    };
    std::vector<Job> jobs;
    for (int i = 0; i < nt; ++i)
        for (auto sel : cfg.selections)
            for (auto pat : cfg.patterns)
                jobs.push_back({i, sel, pat});
    MatrixResult res;
    res.cells.resize(jobs.size());
    const int nj = static_cast<int>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
    for (int j = 0; j < nj; ++j) {
        const Topo& t = *topos[jobs[j].topo];
        MatrixCell& c = res.cells[j];
        c.integration = t.integration;
        c.diameter_mm = t.diameter;
        c.utilization = t.utilization;
        c.scheme = t.scheme;
        c.selection = jobs[j].selection;
        c.pattern = jobs[j].pattern;
        if (!t.error.empty()) {
            c.error = t.error;
            continue;
        }
        try {
            SimConfig sc = cfg.sim;
            sc.selection = c.selection;
            MeasureOptions mo = cfg.measure;
            mo.parallel = false;
            TrafficSpec tr;
            tr.pattern = c.pattern;
            tr.seed = cfg.permutation_seed;
            const SweepResult s = saturation_search(t.graph, t.tables, tr, sc, mo);
            c.compute_count = t.graph.endpoint_count();
            c.routing_fallback_fraction = t.tables.fallback_fraction;
            c.zero_load_latency = s.zero_load_latency;
            c.saturation_rate = s.saturation_rate;
            c.link_limited = s.link_limited;
            const SimReport& rep = s.saturation_rate > 0 || s.points.empty() ? s.saturation_report
                                                                              : s.points.front().report;
            c.avg_hops = rep.avg_hops;
            c.energy_per_byte_pj = energy_report(rep, sc.energy, sc.flit_bytes).energy_per_byte_pj;
            c.ok = true;
        } catch (const std::exception& e) {
            c.error = e.what();
        }
        if (progress) {
#pragma omp critical(matrix_progress)
            *progress << c.key() << (c.ok ? " ok" : " FAILED: " + c.error) << "\n";
        }
    }
    std::sort(res.cells.begin(), res.cells.end(),
              [](const MatrixCell& a, const MatrixCell& b) { return order(a) < order(b); });
    compute_improvements(res);
    return res;
}

void compute_improvements(MatrixResult& r) {
    std::map<std::tuple<int, double, int, int, int>, const MatrixCell*> base;
    auto group = [](const MatrixCell& c) {
        return std::make_tuple(static_cast<int>(c.integration), c.diameter_mm,
                               static_cast<int>(c.utilization), static_cast<int>(c.selection),
                               static_cast<int>(c.pattern));
    };
    for (const auto& c : r.cells)
        if (c.scheme == Scheme::Baseline && c.ok)
            base[group(c)] = &c;
    for (auto& c : r.cells) {
        auto it = base.find(group(c));
        c.has_baseline = c.ok && it != base.end();
        if (!c.has_baseline)
            continue;
        const MatrixCell& b = *it->second;
        c.throughput_improvement_pct = pct_gain(c.saturation_rate, b.saturation_rate);
        c.latency_improvement_pct = pct_drop(c.zero_load_latency, b.zero_load_latency);
        c.energy_improvement_pct = pct_drop(c.energy_per_byte_pj, b.energy_per_byte_pj);
    }
}

std::string matrix_to_csv(const MatrixResult& r) {
    std::ostringstream o;
    o << "integration,diameter_mm,utilization,scheme,selection,pattern,status,compute_count,"
         "routing_fallback_fraction,zero_load_latency_cycles,saturation_rate,link_limited,avg_hops,"
         "energy_per_byte_pj,throughput_improvement_pct,latency_improvement_pct,"
         "energy_improvement_pct,error\n";
    for (const auto& c : r.cells) {
        std::string err = c.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        o << to_string(c.integration) << "," << c.diameter_mm << "," << to_string(c.utilization) << ","
          << to_string(c.scheme) << "," << to_string(c.selection) << "," << to_string(c.pattern) << ","
          << (c.ok ? "ok" : "failed") << "," << c.compute_count << ","
          << fmt(c.routing_fallback_fraction) << "," << fmt(c.zero_load_latency, 2) << ","
          << fmt(c.saturation_rate) << "," << (c.link_limited ? 1 : 0) << "," << fmt(c.avg_hops, 3) << ","
          << fmt(c.energy_per_byte_pj, 2) << ","
          << (c.has_baseline ? fmt(c.throughput_improvement_pct, 2) : "") << ","
          << (c.has_baseline ? fmt(c.latency_improvement_pct, 2) : "") << ","
          << (c.has_baseline ? fmt(c.energy_improvement_pct, 2) : "") << "," << err << "\n";
    }
    return o.str();
}

std::string matrix_to_json(const MatrixResult& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "matrix";
    auto& cells = j["cells"] = nlohmann::json::array();
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    for (const auto& c : r.cells) {
        nlohmann::json x{{"key", c.key()},
                         {"integration", to_string(c.integration)},
                         {"diameter_mm", c.diameter_mm},
                         {"utilization", to_string(c.utilization)},
                         {"scheme", to_string(c.scheme)},
                         {"selection", to_string(c.selection)},
                         {"pattern", to_string(c.pattern)},
                         {"ok", c.ok}};
        if (!c.ok) {
            x["error"] = c.error;
        } else {
            x["compute_count"] = c.compute_count;
            x["routing_fallback_fraction"] = c.routing_fallback_fraction;
            x["zero_load_latency_cycles"] = c.zero_load_latency;
            x["saturation_rate"] = c.saturation_rate;
            x["link_limited"] = c.link_limited;
            x["avg_hops"] = c.avg_hops;
            x["energy_per_byte_pj"] = c.energy_per_byte_pj;
        }
        if (c.has_baseline) {
            x["throughput_improvement_pct"] = num(c.throughput_improvement_pct);
            x["latency_improvement_pct"] = num(c.latency_improvement_pct);
            x["energy_improvement_pct"] = num(c.energy_improvement_pct);
        }
        cells.push_back(x);
    }
    return j.dump(2);
}

std::vector<std::pair<std::string, std::string>> matrix_heatmaps(const MatrixResult& r) {
    using Group = std::tuple<int, double, int, int>;
    std::map<Group, std::vector<const MatrixCell*>> groups;
    for (const auto& c : r.cells)
        groups[{static_cast<int>(c.integration), c.diameter_mm, static_cast<int>(c.utilization),
                static_cast<int>(c.selection)}]
            .push_back(&c);
    struct Metric {
        const char* name;
        double MatrixCell::*field;
    };
    const Metric metrics[] = {{"throughput", &MatrixCell::throughput_improvement_pct},
                              {"latency", &MatrixCell::latency_improvement_pct},
                              {"energy", &MatrixCell::energy_improvement_pct}};
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [g, cells] : groups) {
        std::vector<Scheme> rows;
        std::vector<Pattern> cols;
        for (const auto* c : cells) {
            if (std::find(rows.begin(), rows.end(), c->scheme) == rows.end())
                rows.push_back(c->scheme);
            if (std::find(cols.begin(), cols.end(), c->pattern) == cols.end())
                cols.push_back(c->pattern);
        }
        const auto* first = cells.front();
        for (const auto& m : metrics) {
            const int cw = 110, ch = 36, lw = 110, th = 56;
            const int w = lw + cw * static_cast<int>(cols.size()) + 10;
            const int h = th + ch * static_cast<int>(rows.size()) + 10;
            std::ostringstream s;
            s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
              << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
            s << "<title>" << m.name << " improvement over Baseline, " << to_string(first->integration)
              << " " << first->diameter_mm << " mm " << to_string(first->utilization) << ", "
              << to_string(first->selection) << "</title>\n";
            s << "<text x=\"4\" y=\"16\" font-weight=\"bold\">" << m.name << " improvement (%) "
              << to_string(first->integration) << " " << first->diameter_mm << " mm "
              << to_string(first->utilization) << " " << to_string(first->selection) << "</text>\n";
            for (size_t ci = 0; ci < cols.size(); ++ci)
                s << "<text x=\"" << lw + cw * ci + cw / 2 << "\" y=\"" << th - 8
                  << "\" text-anchor=\"middle\">" << to_string(cols[ci]) << "</text>\n";
            for (size_t ri = 0; ri < rows.size(); ++ri) {
                const int y = th + ch * static_cast<int>(ri);
                s << "<text x=\"4\" y=\"" << y + ch / 2 + 4 << "\">" << to_string(rows[ri]) << "</text>\n";
                for (size_t ci = 0; ci < cols.size(); ++ci) {
                    const MatrixCell* cell = nullptr;
                    for (const auto* c : cells)
                        if (c->scheme == rows[ri] && c->pattern == cols[ci])
                            cell = c;
                    const double v = cell && cell->has_baseline ? cell->*m.field : NAN;
                    std::string fill = "#dddddd", label = "n/a";
                    if (std::isfinite(v)) {
                        const double a = std::min(1.0, std::abs(v) / 100.0);
                        const int k = static_cast<int>(255 - 155 * a);
                        std::ostringstream col;
                        col << "rgb(" << (v >= 0 ? k : 255) << "," << (v >= 0 ? 255 : k) << "," << k << ")";
                        fill = col.str();
                        label = fmt(v, 1);
                    }
                    s << "<rect x=\"" << lw + cw * ci << "\" y=\"" << y << "\" width=\"" << cw
                      << "\" height=\"" << ch << "\" fill=\"" << fill << "\" stroke=\"white\"/>\n";
                    s << "<text x=\"" << lw + cw * ci + cw / 2 << "\" y=\"" << y + ch / 2 + 4
                      << "\" text-anchor=\"middle\">" << label << "</text>\n";
                }
            }
            s << "</svg>\n";
            std::ostringstream name;
            name << "heatmap_" << m.name << "_" << to_string(first->integration) << "_"
                 << first->diameter_mm << "_" << to_string(first->utilization) << "_"
                 << to_string(first->selection) << ".svg";
            out.emplace_back(name.str(), s.str());
        }
    }
    return out;
}

void write_matrix(const MatrixResult& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    std::ofstream(base / "matrix.csv") << matrix_to_csv(r);
    std::ofstream(base / "matrix.json") << matrix_to_json(r);
    for (const auto& [name, svg] : matrix_heatmaps(r))
        std::ofstream(base / name) << svg;
}

}  // namespace wsnet
