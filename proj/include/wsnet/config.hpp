#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsnet/geometry.hpp"
#include "wsnet/measure.hpp"
#include "wsnet/topology.hpp"

namespace wsnet {

struct ConfigError : DomainError {
    using DomainError::DomainError;
};

struct RunConfig {
    WaferSpec wafer;
    Scheme scheme = Scheme::Baseline;
    IntraPolicy intra = IntraPolicy::Auto;
    SimConfig sim;
    TrafficSpec traffic;
    MeasureOptions measure;
    BisectionOptions bisection;
    std::string output_dir = "out";
    int parallelism = 0;  // 0: OpenMP default

    void validate() const;
};

// Rejects unknown keys at every level; missing keys keep their defaults.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
std::string config_to_json(const RunConfig& c);

}  // namespace wsnet
