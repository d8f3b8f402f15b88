#include "rcm/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcm {

void export_environment_csv(const Environment& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "edge_id,tail,head,omega\n";
    char buf[64];
    for (std::int64_t e = 0; e < env.graph->edge_count(); ++e) {
        const auto& ed = env.graph->edge(static_cast<std::int32_t>(e));
        std::snprintf(buf, sizeof buf, "%.17g", env.omega[e]);
        out << e << ',' << ed.tail << ',' << ed.head << ',' << buf << '\n';
    }
}

Environment import_environment_csv(const LatticeGraph& g,
                                   const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    Environment env;
    env.graph = &g;
    env.omega.assign(g.edge_count(), 0.0);
    env.spec = "{\"kind\":\"imported\",\"path\":\"" + path + "\"}";
    std::int64_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        const std::int64_t e = std::stoll(cell);
        std::getline(row, cell, ',');
        const std::int32_t tail = std::stoi(cell);
        std::getline(row, cell, ',');
        const std::int32_t head = std::stoi(cell);
        std::getline(row, cell, ',');
        const double omega = std::stod(cell);
        if (e < 0 || e >= g.edge_count())
            throw std::runtime_error("edge id out of range in " + path);
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        if (ed.tail != tail || ed.head != head)
            throw std::runtime_error("edge endpoints mismatch graph at id " +
                                     std::to_string(e));
        if (!(omega > 0.0))
            throw std::runtime_error("nonpositive conductance at edge " +
                                     std::to_string(e));
        env.omega[e] = omega;
        ++count;
    }
    if (count != g.edge_count())
        throw std::runtime_error("edge count mismatch: file has " +
                                 std::to_string(count));
    return env;
}

void export_metric_csv(const LatticeGraph& g, const MetricField& field,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const auto graph_dist = g.graph_distance_field(field.source);
    out << "vertex,graph_dist,intrinsic_dist\n";
    char buf[64];
    for (std::int64_t y = 0; y < g.vertex_count(); ++y) {
        std::snprintf(buf, sizeof buf, "%.17g", field.dist[y]);
        out << y << ',' << graph_dist[y] << ',' << buf << '\n';
    }
}

void export_heat_kernel_csv(const HeatKernelField& field,
                            const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "t,y,probability,density\n";
    char pb[64], db[64];
    for (std::size_t i = 0; i < field.times.size(); ++i) {
        for (std::size_t y = 0; y < field.prob[i].size(); ++y) {
            std::snprintf(pb, sizeof pb, "%.17g", field.prob[i][y]);
            std::snprintf(db, sizeof db, "%.17g", field.density[i][y]);
            out << field.times[i] << ',' << y << ',' << pb << ',' << db << '\n';
        }
    }
}

std::uint64_t config_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace rcm
