#include <sstream>

#include "json.hpp"
#include "wsnet/topology.hpp"

namespace wsnet {

using nlohmann::json;

GraphFormat parse_graph_format(const std::string& s) {
    if (s == "json") return GraphFormat::Json;
    if (s == "dot" || s == "dot-reticle") return GraphFormat::DotReticle;
    if (s == "dot-router") return GraphFormat::DotRouter;
    throw DomainError("unknown graph format: " + s);
}

namespace {

std::string dot_reticle(const NetworkGraph& g) {
    std::ostringstream os;
    os << "graph reticles {\n";
    for (size_t r = 0; r < g.reticle_kinds.size(); ++r)
        os << "  r" << r << " [shape="
           << (g.reticle_kinds[r] == ReticleKind::Compute ? "box" : "ellipse") << "];\n";
    for (size_t r = 0; r < g.reticle_adjacency.size(); ++r)
        for (int t : g.reticle_adjacency[r])
            if (t > static_cast<int>(r))
                os << "  r" << r << " -- r" << t << ";\n";
    os << "}\n";
    return os.str();
}

std::string dot_router(const NetworkGraph& g) {
    std::ostringstream os;
    os << "graph routers {\n";
    for (const Router& r : g.routers)
        os << "  n" << r.id << " [label=\"" << r.id << "@" << r.reticle_id << "\" shape="
           << (r.role == RouterRole::ComputeHub ? "box" : "ellipse") << " pos=\""
           << r.position.x << ',' << r.position.y << "!\"];\n";
    for (const Link& l : g.links)
        if (l.src < l.dst || (l.src == l.dst && l.id < l.reverse))
            os << "  n" << l.src << " -- n" << l.dst << " [style="
               << (l.kind == LinkKind::Vertical ? "dashed" : "solid") << " label=\""
               << l.latency_cycles << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace

std::string export_graph(const NetworkGraph& g, GraphFormat format) {
    if (format == GraphFormat::DotReticle)
        return dot_reticle(g);
    if (format == GraphFormat::DotRouter)
        return dot_router(g);
    json j;
    j["schema_version"] = 1;
    j["type"] = "network";
    json rs = json::array();
    for (const Router& r : g.routers)
        rs.push_back({{"id", r.id},
                      {"reticle", r.reticle_id},
                      {"role", r.role == RouterRole::ComputeHub ? "hub" : "switch"},
                      {"position", {r.position.x, r.position.y}},
                      {"concentration", r.concentration}});
    json ls = json::array();
    for (const Link& l : g.links)
        ls.push_back({{"id", l.id},
                      {"src", l.src},
                      {"dst", l.dst},
                      {"kind", l.kind == LinkKind::Vertical ? "vertical" : "planar"},
                      {"latency", l.latency_cycles},
                      {"stages", l.pipeline_stages},
                      {"length_mm", l.length_mm},
                      {"reverse", l.reverse}});
    json kinds = json::array();
    for (ReticleKind k : g.reticle_kinds)
        kinds.push_back(to_string(k));
    j["routers"] = rs;
    j["links"] = ls;
    j["compute_endpoints"] = g.compute_endpoints;
    j["reticle_kinds"] = kinds;
    j["reticle_adjacency"] = g.reticle_adjacency;
    return j.dump(1);
}

NetworkGraph load_graph(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("schema_version", 0) != 1 || j.value("type", "") != "network")
        throw DomainError("not a network document of schema_version 1");
    NetworkGraph g;
    for (const json& r : j.at("routers"))
        g.routers.push_back({r.at("id"), r.at("reticle"),
                             r.at("role") == "hub" ? RouterRole::ComputeHub
                                                   : RouterRole::InterconnectSwitch,
                             {r.at("position").at(0), r.at("position").at(1)},
                             r.at("concentration")});
    for (const json& l : j.at("links"))
        g.links.push_back({l.at("id"), l.at("src"), l.at("dst"),
                           l.at("kind") == "vertical" ? LinkKind::Vertical : LinkKind::Planar,
                           l.at("latency"), l.at("stages"), l.at("length_mm"), l.at("reverse")});
    g.compute_endpoints = j.at("compute_endpoints").get<std::vector<int>>();
    for (const json& k : j.at("reticle_kinds"))
        g.reticle_kinds.push_back(k == "compute" ? ReticleKind::Compute : ReticleKind::Interconnect);
    g.reticle_adjacency = j.at("reticle_adjacency").get<std::vector<std::vector<int>>>();
    for (size_t i = 0; i < g.routers.size(); ++i)
        if (g.routers[i].id != static_cast<int>(i))
            throw DomainError("router ids must be dense and ordered");
    for (size_t i = 0; i < g.links.size(); ++i) {
        const Link& l = g.links[i];
        const int nr = static_cast<int>(g.routers.size());
        if (l.id != static_cast<int>(i) || l.src < 0 || l.src >= nr || l.dst < 0 || l.dst >= nr)
            throw DomainError("malformed link " + std::to_string(i));
    }
    g.finalize();
    return g;
}

}  // namespace wsnet
