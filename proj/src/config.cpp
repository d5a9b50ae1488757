#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wsnet/config.hpp"

namespace wsnet {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k))
            throw ConfigError("unknown key " + where + "." + k);
}

template <class T>
void get(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("bad value for " + where + "." + key);
    }
}

}  // namespace

void RunConfig::validate() const {
    if (!(wafer.diameter_mm > 0))
        throw ConfigError("wafer.diameter_mm must be positive");
    if (!scheme_valid_for(scheme, wafer.integration))
        throw ConfigError(to_string(scheme) + " is not valid with " + to_string(wafer.integration));
    sim.validate();
    if (!(traffic.offered_rate > 0 && traffic.offered_rate <= 1))
        throw ConfigError("traffic.offered_rate must be in (0, 1]");
    if (measure.seeds.empty())
        throw ConfigError("seeds must not be empty");
    if (measure.steps.empty())
        throw ConfigError("measure.steps must not be empty");
    if (measure.zero_load_packets <= 0 || measure.target_packets <= 0 ||
        measure.max_measured_packets <= 0 || measure.min_measure_cycles <= 0)
        throw ConfigError("measure parameters must be positive");
    if (bisection.runs <= 0)
        throw ConfigError("bisection.runs must be positive");
    if (parallelism < 0)
        throw ConfigError("parallelism must be non-negative");
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(j, {"schema_version", "type", "wafer", "scheme", "intra", "sim", "energy", "traffic",
                   "measure", "bisection", "seeds", "output_dir", "parallelism"},
               "config");
    if (j.contains("schema_version") && j["schema_version"] != 1)
        throw ConfigError("unsupported schema_version");
    if (j.contains("type") && j["type"] != "run_config")
        throw ConfigError("type must be run_config");
    RunConfig c;
    try {
        if (j.contains("wafer")) {
            const json& w = j["wafer"];
            check_keys(w, {"diameter_mm", "integration", "utilization"}, "wafer");
            get(w, "diameter_mm", c.wafer.diameter_mm, "wafer");
            if (w.contains("integration"))
                c.wafer.integration = parse_integration(w["integration"].get<std::string>());
            if (w.contains("utilization"))
                c.wafer.utilization = parse_utilization(w["utilization"].get<std::string>());
        }
        if (j.contains("scheme"))
            c.scheme = parse_scheme(j["scheme"].get<std::string>());
        if (j.contains("intra"))
            c.intra = parse_intra_policy(j["intra"].get<std::string>());
        if (j.contains("sim")) {
            const json& s = j["sim"];
            check_keys(s, {"buffer_depth_flits", "router_latency_cycles", "vcs_per_channel", "flit_bytes",
                           "packet_flits", "source_queue_packets", "warmup_cycles", "measure_cycles",
                           "drain_cycle_cap", "watchdog_cycles", "seed", "selection", "audit"},
                       "sim");
            get(s, "buffer_depth_flits", c.sim.buffer_depth_flits, "sim");
            get(s, "router_latency_cycles", c.sim.router_latency_cycles, "sim");
            get(s, "vcs_per_channel", c.sim.vcs_per_channel, "sim");
            get(s, "flit_bytes", c.sim.flit_bytes, "sim");
            get(s, "packet_flits", c.sim.packet_flits, "sim");
            get(s, "source_queue_packets", c.sim.source_queue_packets, "sim");
            get(s, "warmup_cycles", c.sim.warmup_cycles, "sim");
            get(s, "measure_cycles", c.sim.measure_cycles, "sim");
            get(s, "drain_cycle_cap", c.sim.drain_cycle_cap, "sim");
            get(s, "watchdog_cycles", c.sim.watchdog_cycles, "sim");
            get(s, "seed", c.sim.seed, "sim");
            get(s, "audit", c.sim.audit, "sim");
            if (s.contains("selection"))
                c.sim.selection = parse_selection(s["selection"].get<std::string>());
        }
        if (j.contains("energy")) {
            const json& e = j["energy"];
            check_keys(e, {"pj_per_bit_per_stage", "router_energy_pj_per_flit"}, "energy");
            get(e, "pj_per_bit_per_stage", c.sim.energy.pj_per_bit_per_stage, "energy");
            get(e, "router_energy_pj_per_flit", c.sim.energy.router_energy_pj_per_flit, "energy");
        }
        if (j.contains("traffic")) {
            const json& t = j["traffic"];
            check_keys(t, {"pattern", "offered_rate", "seed", "hotspot"}, "traffic");
            if (t.contains("pattern"))
                c.traffic.pattern = parse_pattern(t["pattern"].get<std::string>());
            get(t, "offered_rate", c.traffic.offered_rate, "traffic");
            get(t, "seed", c.traffic.seed, "traffic");
            get(t, "hotspot", c.traffic.hotspot, "traffic");
        }
        if (j.contains("measure")) {
            const json& m = j["measure"];
            check_keys(m, {"zero_load_rate", "zero_load_packets", "target_packets", "max_measured_packets",
                           "min_measure_cycles", "min_warmup_cycles", "threshold_factor", "steps"},
                       "measure");
            get(m, "zero_load_rate", c.measure.zero_load_rate, "measure");
            get(m, "zero_load_packets", c.measure.zero_load_packets, "measure");
            get(m, "target_packets", c.measure.target_packets, "measure");
            get(m, "max_measured_packets", c.measure.max_measured_packets, "measure");
            get(m, "min_measure_cycles", c.measure.min_measure_cycles, "measure");
            get(m, "min_warmup_cycles", c.measure.min_warmup_cycles, "measure");
            get(m, "threshold_factor", c.measure.threshold_factor, "measure");
            get(m, "steps", c.measure.steps, "measure");
        }
        if (j.contains("bisection")) {
            const json& b = j["bisection"];
            check_keys(b, {"runs", "seed", "link_tbps", "count_connectors"}, "bisection");
            get(b, "runs", c.bisection.runs, "bisection");
            get(b, "seed", c.bisection.seed, "bisection");
            get(b, "link_tbps", c.bisection.link_tbps, "bisection");
            get(b, "count_connectors", c.bisection.count_connectors, "bisection");
        }
        get(j, "seeds", c.measure.seeds, "config");
        get(j, "output_dir", c.output_dir, "config");
        get(j, "parallelism", c.parallelism, "config");
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["schema_version"] = 1;
    j["type"] = "run_config";
    j["wafer"] = {{"diameter_mm", c.wafer.diameter_mm},
                  {"integration", c.wafer.integration == Integration::LogicOnInterconnect ? "loi" : "lol"},
                  {"utilization", c.wafer.utilization == Utilization::Rectangular ? "rect" : "max"}};
    j["scheme"] = to_string(c.scheme);
    j["intra"] = to_string(c.intra);
    j["sim"] = {{"buffer_depth_flits", c.sim.buffer_depth_flits},
                {"router_latency_cycles", c.sim.router_latency_cycles},
                {"vcs_per_channel", c.sim.vcs_per_channel},
                {"flit_bytes", c.sim.flit_bytes},
                {"packet_flits", c.sim.packet_flits},
                {"source_queue_packets", c.sim.source_queue_packets},
                {"warmup_cycles", c.sim.warmup_cycles},
                {"measure_cycles", c.sim.measure_cycles},
                {"drain_cycle_cap", c.sim.drain_cycle_cap},
                {"watchdog_cycles", c.sim.watchdog_cycles},
                {"seed", c.sim.seed},
                {"selection", to_string(c.sim.selection)},
                {"audit", c.sim.audit}};
    j["energy"] = {{"pj_per_bit_per_stage", c.sim.energy.pj_per_bit_per_stage},
                   {"router_energy_pj_per_flit", c.sim.energy.router_energy_pj_per_flit}};
    j["traffic"] = {{"pattern", to_string(c.traffic.pattern)},
                    {"offered_rate", c.traffic.offered_rate},
                    {"seed", c.traffic.seed},
                    {"hotspot", c.traffic.hotspot}};
    j["measure"] = {{"zero_load_rate", c.measure.zero_load_rate},
                    {"zero_load_packets", c.measure.zero_load_packets},
                    {"target_packets", c.measure.target_packets},
                    {"max_measured_packets", c.measure.max_measured_packets},
                    {"min_measure_cycles", c.measure.min_measure_cycles},
                    {"min_warmup_cycles", c.measure.min_warmup_cycles},
                    {"threshold_factor", c.measure.threshold_factor},
                    {"steps", c.measure.steps}};
    j["bisection"] = {{"runs", c.bisection.runs},
                      {"seed", c.bisection.seed},
                      {"link_tbps", c.bisection.link_tbps},
                      {"count_connectors", c.bisection.count_connectors}};
    j["seeds"] = c.measure.seeds;
    j["output_dir"] = c.output_dir;
    j["parallelism"] = c.parallelism;
    return j.dump(2);
}

}  // namespace wsnet
