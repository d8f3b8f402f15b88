#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcm/lattice.hpp"

namespace rcm {

// Positive conductance per edge. The (spec, seed) provenance determines the
// field bit-for-bit because all draws are counter-addressable.
struct Environment {
    const LatticeGraph* graph = nullptr;
    std::vector<double> omega;
    std::string spec;  // JSON text of the generator spec
    std::uint64_t seed = 0;

    double operator()(std::int32_t e) const { return omega[e]; }
};

enum class SpeedKind { csrw, vsrw, custom };

struct SpeedMeasure {
    SpeedKind kind = SpeedKind::vsrw;
    std::vector<double> theta;

    double operator()(std::int32_t x) const { return theta[x]; }
};

struct ParetoDist {
    double alpha;
    double scale;
};
struct UniformDist {
    double a;
    double b;
};
struct LognormalDist {
    double m;
    double s;
};

struct IidDist {
    enum class Kind { pareto, uniform, lognormal } kind;
    double p0 = 0.0;  // alpha / a / m
    double p1 = 0.0;  // scale / b / s
};

struct LayeredSpec {
    double alpha0;
    std::uint64_t seed;
};

Environment gen_constant(const LatticeGraph& g, double c);
Environment gen_iid(const LatticeGraph& g, const IidDist& dist, std::uint64_t seed);
Environment gen_layered(const LatticeGraph& g, const LayeredSpec& spec);

// Line draw of the layered construction: one 1 v Pareto(alpha0,1) value per
// (axis, transverse index). Addressable, so it also serves the lazy greedy
// path on the unbounded quadrant.
double layered_line_value(const LayeredSpec& spec, int axis,
                          const std::vector<std::int64_t>& transverse);

// mu(x) = sum of conductances over incident edges, nu(x) = sum of inverses.
std::vector<double> mu(const Environment& env);
std::vector<double> nu(const Environment& env);

SpeedMeasure speed_measure(const Environment& env, SpeedKind kind,
                           const std::vector<double>* custom_theta = nullptr);

double iid_draw(const IidDist& dist, std::uint64_t seed, std::uint64_t counter);

}  // namespace rcm
