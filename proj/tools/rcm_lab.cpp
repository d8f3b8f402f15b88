// Command line front end. Subcommands:
//   gen        generate a conductance environment, write edge CSV
//   dist       intrinsic distance field from a source vertex
//   hke        heat kernel via uniformization
//   optimality greedy-path scaling in the layered environment
//   verify     run the full verification suite
// Each output CSV gets a JSON sidecar with the resolved config and seeds.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcm/acceptance.hpp"
#include "rcm/environment.hpp"
#include "rcm/heat.hpp"
#include "rcm/io.hpp"
#include "rcm/lattice.hpp"
#include "rcm/metric.hpp"

using nlohmann::json;

namespace {

struct Common {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tol = 1e-10;
    int threads = 1;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "JSON config file");
    cmd->add_option("--seed", c.seed, "override the config seed")
        ->each([&c](const std::string&) { c.seed_set = true; });
    cmd->add_option("--tol", c.tol, "numerical tolerance");
    cmd->add_option("--threads", c.threads, "worker threads");
    cmd->add_option("--out-dir", c.out_dir, "output directory");
}

json load_config(const Common& c) {
    if (c.config_path.empty()) return json::object();
    std::ifstream in(c.config_path);
    if (!in) throw std::runtime_error("cannot open config " + c.config_path);
    return json::parse(in);
}

rcm::LatticeGraph graph_from_config(const json& cfg) {
    const auto& g = cfg.at("graph");
    const int d = g.at("d").get<int>();
    const auto extents = g.at("extents").get<std::vector<int>>();
    const auto boundary =
        rcm::boundary_from_string(g.value("boundary", std::string("box")));
    return rcm::LatticeGraph::build(d, extents, boundary);
}

rcm::Environment env_from_config(const rcm::LatticeGraph& g, const json& cfg,
                                 const Common& c) {
    const auto& e = cfg.at("env");
    const std::string kind = e.at("kind").get<std::string>();
    const std::uint64_t seed =
        c.seed_set ? c.seed : e.value("seed", std::uint64_t{0});
    if (kind == "constant") return rcm::gen_constant(g, e.value("value", 1.0));
    if (kind == "layered")
        return rcm::gen_layered(g, {e.at("alpha0").get<double>(), seed});
    if (kind == "iid") {
        const auto& d = e.at("dist");
        rcm::IidDist dist{};
        if (d.contains("pareto")) {
            dist = {rcm::IidDist::Kind::pareto, d["pareto"].at("alpha"),
                    d["pareto"].value("scale", 1.0)};
        } else if (d.contains("uniform")) {
            dist = {rcm::IidDist::Kind::uniform, d["uniform"].at("a"),
                    d["uniform"].at("b")};
        } else if (d.contains("lognormal")) {
            dist = {rcm::IidDist::Kind::lognormal, d["lognormal"].value("m", 0.0),
                    d["lognormal"].at("s")};
        } else {
            throw std::runtime_error("unknown iid dist in config");
        }
        return rcm::gen_iid(g, dist, seed);
    }
    if (kind == "imported")
        return rcm::import_environment_csv(g, e.at("path").get<std::string>());
    throw std::runtime_error("unknown env kind: " + kind);
}

rcm::SpeedMeasure speed_from_config(const rcm::Environment& env, const json& cfg) {
    const std::string s = cfg.value("speed", std::string("vsrw"));
    if (s == "vsrw") return rcm::speed_measure(env, rcm::SpeedKind::vsrw);
    if (s == "csrw") return rcm::speed_measure(env, rcm::SpeedKind::csrw);
    throw std::runtime_error("unknown speed measure: " + s);
}

void write_sidecar(const std::string& csv_path, const json& cfg,
                   const Common& c, const rcm::Environment& env) {
    json side;
    side["config"] = cfg;
    side["config_hash"] = rcm::config_hash(cfg.dump());
    side["env_seed"] = env.seed;
    side["env_spec"] = json::parse(env.spec);
    side["tol"] = c.tol;
    std::ofstream out(csv_path + ".json");
    out << side.dump(2) << "\n";
}

std::string out_path(const Common& c, const std::string& name) {
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / name).string();
}

int run_gen(const Common& c) {
    const json cfg = load_config(c);
    const auto g = graph_from_config(cfg);
    const auto env = env_from_config(g, cfg, c);
    const auto path = out_path(c, "environment.csv");
    rcm::export_environment_csv(env, path);
    write_sidecar(path, cfg, c, env);
    std::cout << "wrote " << path << " (" << g.edge_count() << " edges)\n";
    return 0;
}

int run_dist(const Common& c) {
    const json cfg = load_config(c);
    const auto g = graph_from_config(cfg);
    const auto env = env_from_config(g, cfg, c);
    const auto theta = speed_from_config(env, cfg);
    const std::int32_t source =
        cfg.value("source", static_cast<std::int64_t>(g.center_vertex()));
    const auto field = rcm::intrinsic_distance_field(env, theta, source);
    const auto cert = rcm::certify_feasible(env, theta, field.dist, c.tol);
    if (!cert.feasible) {
        std::cerr << "distance field failed its feasibility certificate\n";
        return 2;
    }
    const auto path = out_path(c, "distance.csv");
    rcm::export_metric_csv(g, field, path);
    write_sidecar(path, cfg, c, env);
    if (cfg.contains("radii")) {
        const auto radii = cfg["radii"].get<std::vector<int>>();
        if (radii.empty()) throw std::runtime_error("radii list is empty");
        const double p = cfg.at("p").get<double>();
        const auto rep = rcm::lower_bound_report(env, theta, source, p, radii);
        json out;
        out["p"] = rep.p;
        out["exponent"] = rep.exponent;
        out["m_p"] = rep.m_p;
        out["c_hat"] = rep.c_hat;
        for (const auto& row : rep.rows)
            out["rows"].push_back({{"radius", row.radius},
                                   {"min_intrinsic", row.min_intrinsic},
                                   {"ratio", row.ratio}});
        std::ofstream rf(out_path(c, "lower_bound.json"));
        rf << out.dump(2) << "\n";
    }
    std::cout << "wrote " << path << " (source " << source << ", certified)\n";
    return 0;
}

int run_hke(const Common& c) {
    const json cfg = load_config(c);
    const auto g = graph_from_config(cfg);
    const auto env = env_from_config(g, cfg, c);
    const auto theta = speed_from_config(env, cfg);
    const std::int32_t source =
        cfg.value("source", static_cast<std::int64_t>(g.center_vertex()));
    const auto times = cfg.at("times").get<std::vector<double>>();
    const auto field = rcm::heat_kernel_field(env, theta, source, times, c.tol);
    const auto path = out_path(c, "heat_kernel.csv");
    rcm::export_heat_kernel_csv(field, path);
    write_sidecar(path, cfg, c, env);
    if (cfg.contains("envelope")) {
        const auto& e = cfg["envelope"];
        const auto regime = e.value("regime", std::string("gaussian")) == "gaussian"
                                ? rcm::EnvelopeRegime::gaussian
                                : rcm::EnvelopeRegime::poissonian;
        const auto metric = rcm::intrinsic_distance_field(env, theta, source);
        const auto rep = rcm::envelope_fit_and_verify(
            field, metric, g, regime, e.value("c1", 1.0), e.value("c5", 8.0),
            g.dimension());
        json out;
        out["regime"] = e.value("regime", std::string("gaussian"));
        out["c1"] = rep.params.c1;
        out["c2"] = rep.params.c2;
        out["c3"] = rep.params.c3;
        out["c4"] = rep.params.c4;
        out["c5"] = rep.params.c5;
        out["gamma"] = rep.params.gamma;
        out["fit_count"] = rep.fit_count;
        out["test_count"] = rep.test_count;
        out["test_violations"] = rep.test_violations;
        out["worst_test_ratio"] = rep.worst_test_ratio;
        std::ofstream rf(out_path(c, "envelope.json"));
        rf << out.dump(2) << "\n";
    }
    std::cout << "wrote " << path << " (rate " << field.uniformization_rate
              << ", truncation error " << field.truncation_error << ")\n";
    return 0;
}

int run_optimality(const Common& c) {
    const json cfg = load_config(c);
    const auto& e = cfg.at("env");
    if (e.at("kind").get<std::string>() != "layered")
        throw std::runtime_error("optimality requires a layered env config");
    const std::uint64_t seed =
        c.seed_set ? c.seed : e.value("seed", std::uint64_t{0});
    const rcm::LayeredSpec spec{e.at("alpha0").get<double>(), seed};
    const int d = cfg.value("d", 2);
    const auto checkpoints =
        cfg.value("checkpoints", std::vector<std::int64_t>{1000, 10000, 100000});
    const auto variant = cfg.value("restrict_first_step", true)
                             ? rcm::GreedyVariant::first_step_restricted
                             : rcm::GreedyVariant::unrestricted;
    const auto scaling = rcm::greedy_path_layered(spec, d, variant, checkpoints);
    const auto check = rcm::path_sum_check(scaling, spec.alpha0, d);

    const auto path = out_path(c, "optimality.csv");
    std::ofstream out(path);
    out << "length,inv_sqrt_sum\n";
    for (std::size_t i = 0; i < scaling.lengths.size(); ++i)
        out << scaling.lengths[i] << ',' << scaling.sums[i] << '\n';
    json side;
    side["config"] = cfg;
    side["config_hash"] = rcm::config_hash(cfg.dump());
    side["seed"] = seed;
    side["loglog_slope"] = check.loglog_slope;
    side["bound_exponent"] = check.bound_exponent;
    side["record_count"] = scaling.full.record_count;
    std::ofstream sidecar(path + ".json");
    sidecar << side.dump(2) << "\n";
    std::cout << "wrote " << path << " (slope " << check.loglog_slope
              << ", bound exponent " << check.bound_exponent << ")\n";
    return 0;
}

int run_verify(const Common& c) {
    const auto results = rcm::run_acceptance(true, c.threads);
    return rcm::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random conductance model laboratory"};
    app.require_subcommand(1);

    Common c;
    if (const char* env = std::getenv("RCM_LAB_THREADS")) c.threads = std::atoi(env);

    auto* gen = app.add_subcommand("gen", "generate a conductance environment");
    auto* dist = app.add_subcommand("dist", "intrinsic distance field");
    auto* hke = app.add_subcommand("hke", "heat kernel estimates");
    auto* opt = app.add_subcommand("optimality", "layered greedy-path scaling");
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    for (auto* cmd : {gen, dist, hke, opt, verify}) add_common(cmd, c);

    CLI11_PARSE(app, argc, argv);
    if (c.threads < 1) c.threads = 1;

    try {
        if (gen->parsed()) return run_gen(c);
        if (dist->parsed()) return run_dist(c);
        if (hke->parsed()) return run_hke(c);
        if (opt->parsed()) return run_optimality(c);
        if (verify->parsed()) return run_verify(c);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
