#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wsnet/geometry.hpp"
#include "wsnet/measure.hpp"
#include "wsnet/topology.hpp"

namespace wsnet {

struct MatrixConfig {
    std::vector<Integration> integrations{Integration::LogicOnInterconnect, Integration::LogicOnLogic};
    std::vector<double> diameters{200, 300};
    std::vector<Utilization> utilizations{Utilization::Rectangular, Utilization::Maximized};
    std::vector<Scheme> schemes{Scheme::Baseline, Scheme::Aligned, Scheme::Interleaved,
                                Scheme::Rotated, Scheme::Contoured};
    std::vector<SelectionKind> selections{SelectionKind::Random};
    std::vector<Pattern> patterns{Pattern::Uniform, Pattern::Permutation, Pattern::Neighbor,
                                  Pattern::Tornado};
    IntraPolicy intra = IntraPolicy::Auto;
    SimConfig sim;
    MeasureOptions measure;
    uint64_t permutation_seed = 1;
    bool parallel = true;
};

struct MatrixCell {
    Integration integration = Integration::LogicOnInterconnect;
    double diameter_mm = 0;
    Utilization utilization = Utilization::Rectangular;
    Scheme scheme = Scheme::Baseline;
    SelectionKind selection = SelectionKind::Random;
    Pattern pattern = Pattern::Uniform;

    bool ok = false;
    std::string error;
    int compute_count = 0;
    double routing_fallback_fraction = 0;
    double zero_load_latency = 0;
    double saturation_rate = 0;
    bool link_limited = false;
    double avg_hops = 0;
    double energy_per_byte_pj = 0;
    bool has_baseline = false;
    double throughput_improvement_pct = 0;
    double latency_improvement_pct = 0;
    double energy_improvement_pct = 0;

    std::string key() const;
};

struct MatrixResult {
    std::vector<MatrixCell> cells;  // sorted by key
    int failures() const;
};

MatrixResult run_matrix(const MatrixConfig& cfg, std::ostream* progress = nullptr);
// Fills the improvement columns from the matching Baseline cells.
void compute_improvements(MatrixResult& r);

std::string matrix_to_csv(const MatrixResult& r);
std::string matrix_to_json(const MatrixResult& r);
// (file name, SVG document) per heatmap.
std::vector<std::pair<std::string, std::string>> matrix_heatmaps(const MatrixResult& r);
void write_matrix(const MatrixResult& r, const std::string& dir);

}  // namespace wsnet
