#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcm/acceptance.hpp"
#include "rcm/calculus.hpp"
#include "rcm/environment.hpp"
#include "rcm/heat.hpp"
#include "rcm/io.hpp"
#include "rcm/lattice.hpp"
#include "rcm/metric.hpp"

namespace py = pybind11;
using namespace rcm;

namespace {

Boundary parse_boundary(const std::string& s) { return boundary_from_string(s); }

SpeedKind parse_speed(const std::string& s) {
    if (s == "csrw") return SpeedKind::csrw;
    if (s == "vsrw") return SpeedKind::vsrw;
    throw std::invalid_argument("speed must be 'csrw' or 'vsrw'");
}

IidDist parse_dist(const std::string& kind, double p0, double p1) {
    if (kind == "pareto") return {IidDist::Kind::pareto, p0, p1};
    if (kind == "uniform") return {IidDist::Kind::uniform, p0, p1};
    if (kind == "lognormal") return {IidDist::Kind::lognormal, p0, p1};
    throw std::invalid_argument("unknown distribution: " + kind);
}

}  // namespace

PYBIND11_MODULE(_rcm_lab, m) {
    m.doc() = "random conductance model laboratory";

    py::class_<LatticeGraph>(m, "LatticeGraph")
        .def_static(
            "build",
            [](int d, const std::vector<int>& extents, const std::string& boundary) {
                return LatticeGraph::build(d, extents, parse_boundary(boundary));
            },
            py::arg("d"), py::arg("extents"), py::arg("boundary") = "box")
        .def_property_readonly("dimension", &LatticeGraph::dimension)
        .def_property_readonly("vertex_count", &LatticeGraph::vertex_count)
        .def_property_readonly("edge_count", &LatticeGraph::edge_count)
        .def("coords", &LatticeGraph::coords)
        .def("vertex_at", &LatticeGraph::vertex_at)
        .def("center_vertex", &LatticeGraph::center_vertex)
        .def("graph_distance", &LatticeGraph::graph_distance)
        .def("graph_distance_field", &LatticeGraph::graph_distance_field)
        .def("ball", &LatticeGraph::ball);

    py::class_<Environment>(m, "Environment")
        .def_readonly("omega", &Environment::omega)
        .def_readonly("seed", &Environment::seed)
        .def_readonly("spec", &Environment::spec);

    py::class_<SpeedMeasure>(m, "SpeedMeasure")
        .def_readonly("theta", &SpeedMeasure::theta);

    m.def("gen_constant", &gen_constant, py::keep_alive<0, 1>());
    m.def(
        "gen_iid",
        [](const LatticeGraph& g, const std::string& kind, double p0, double p1,
           std::uint64_t seed) { return gen_iid(g, parse_dist(kind, p0, p1), seed); },
        py::arg("graph"), py::arg("kind"), py::arg("p0"), py::arg("p1"),
        py::arg("seed"), py::keep_alive<0, 1>());
    m.def(
        "gen_layered",
        [](const LatticeGraph& g, double alpha0, std::uint64_t seed) {
            return gen_layered(g, {alpha0, seed});
        },
        py::arg("graph"), py::arg("alpha0"), py::arg("seed"),
        py::keep_alive<0, 1>());
    m.def(
        "speed_measure",
        [](const Environment& env, const std::string& kind) {
            return speed_measure(env, parse_speed(kind));
        },
        py::arg("env"), py::arg("kind") = "vsrw");
    m.def("mu", &mu);
    m.def("nu", &nu);

    py::class_<MetricField>(m, "MetricField")
        .def_readonly("source", &MetricField::source)
        .def_readonly("dist", &MetricField::dist);
    m.def("intrinsic_distance_field", &intrinsic_distance_field);
    m.def("chemical_edge_weight", &chemical_edge_weight);
    m.def(
        "certify_feasible",
        [](const Environment& env, const SpeedMeasure& theta,
           const std::vector<double>& psi, double tol) {
            return certify_feasible(env, theta, psi, tol).feasible;
        },
        py::arg("env"), py::arg("theta"), py::arg("psi"), py::arg("tol") = 1e-12);
    m.def("duality_gap", &duality_gap);

    py::class_<HeatKernelField>(m, "HeatKernelField")
        .def_readonly("source", &HeatKernelField::source)
        .def_readonly("times", &HeatKernelField::times)
        .def_readonly("prob", &HeatKernelField::prob)
        .def_readonly("density", &HeatKernelField::density)
        .def_readonly("uniformization_rate", &HeatKernelField::uniformization_rate)
        .def_readonly("truncation_error", &HeatKernelField::truncation_error);
    m.def("heat_kernel_field", &heat_kernel_field, py::arg("env"),
          py::arg("theta"), py::arg("x0"), py::arg("times"),
          py::arg("tol") = 1e-10);
    m.def(
        "solve_cauchy",
        [](const Environment& env, const SpeedMeasure& theta,
           const std::vector<double>& f, const std::vector<double>& times,
           double tol) { return solve_cauchy(env, theta, f, times, tol).u; },
        py::arg("env"), py::arg("theta"), py::arg("f"), py::arg("times"),
        py::arg("tol") = 1e-10);
    m.def("carne_F", &carne_F);
    m.def("carne_F_numeric", &carne_F_numeric);

    m.def(
        "greedy_path_layered",
        [](double alpha0, std::uint64_t seed, int d,
           const std::vector<std::int64_t>& checkpoints) {
            const auto s = greedy_path_layered(
                {alpha0, seed}, d, GreedyVariant::first_step_restricted, checkpoints);
            return py::make_tuple(s.lengths, s.sums, s.full.record_count);
        },
        py::arg("alpha0"), py::arg("seed"), py::arg("d"), py::arg("checkpoints"));

    m.def(
        "run_acceptance",
        [](bool verbose, int threads) {
            const auto results = run_acceptance(verbose, threads);
            py::list out;
            for (const auto& r : results)
                out.append(py::make_tuple(r.id, r.name, r.pass, r.detail));
            return out;
        },
        py::arg("verbose") = false, py::arg("threads") = 1);

    m.def("export_environment_csv", &export_environment_csv);
    m.def("import_environment_csv", &import_environment_csv,
          py::keep_alive<0, 1>());
}
