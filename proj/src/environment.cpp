#include "rcm/environment.hpp"

#include <cmath>
#include <stdexcept>

#include "rcm/rng.hpp"

namespace rcm {

namespace {

const char* dist_name(IidDist::Kind k) {
    switch (k) {
        case IidDist::Kind::pareto: return "pareto";
        case IidDist::Kind::uniform: return "uniform";
        case IidDist::Kind::lognormal: return "lognormal";
    }
    return "?";
}

void validate(const IidDist& dist) {
    switch (dist.kind) {
        case IidDist::Kind::pareto:
            if (dist.p0 <= 0.0 || dist.p1 <= 0.0)
                throw std::invalid_argument("pareto requires alpha > 0 and scale > 0");
            break;
        case IidDist::Kind::uniform:
            if (dist.p0 <= 0.0 || dist.p1 < dist.p0)
                throw std::invalid_argument("uniform requires 0 < a <= b");
            break;
        case IidDist::Kind::lognormal:
            if (dist.p1 < 0.0)
                throw std::invalid_argument("lognormal requires s >= 0");
            break;
    }
}

}  // namespace

double iid_draw(const IidDist& dist, std::uint64_t seed, std::uint64_t counter) {
    switch (dist.kind) {
        case IidDist::Kind::pareto: {
            // P[Y > r] = (r/scale)^{-alpha} for r >= scale
            const double u = counter_uniform(seed, 0, counter);
            return dist.p1 * std::pow(u, -1.0 / dist.p0);
        }
        case IidDist::Kind::uniform: {
            const double u = counter_uniform(seed, 0, counter);
            return dist.p0 + (dist.p1 - dist.p0) * u;
        }
        case IidDist::Kind::lognormal: {
            const double u1 = counter_uniform(seed, 0, 2 * counter);
            const double u2 = counter_uniform(seed, 0, 2 * counter + 1);
            const double z =
                std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
            return std::exp(dist.p0 + dist.p1 * z);
        }
    }
    throw std::logic_error("unreachable");
}

Environment gen_constant(const LatticeGraph& g, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("constant conductance must be positive and finite");
    Environment env;
    env.graph = &g;
    env.omega.assign(g.edge_count(), c);
    env.spec = "{\"kind\":\"constant\",\"value\":" + std::to_string(c) + "}";
    return env;
}

Environment gen_iid(const LatticeGraph& g, const IidDist& dist,
                    std::uint64_t seed) {
    validate(dist);
    Environment env;
    env.graph = &g;
    env.seed = seed;
    env.omega.resize(g.edge_count());
    for (std::int64_t e = 0; e < g.edge_count(); ++e)
        env.omega[e] = iid_draw(dist, seed, static_cast<std::uint64_t>(e));
    env.spec = std::string("{\"kind\":\"iid\",\"dist\":\"") + dist_name(dist.kind) +
               "\",\"p0\":" + std::to_string(dist.p0) +
               ",\"p1\":" + std::to_string(dist.p1) + "}";
    return env;
}

double layered_line_value(const LayeredSpec& spec, int axis,
                          const std::vector<std::int64_t>& transverse) {
    // fold the transverse coordinates into one addressable counter
    std::uint64_t h = splitmix64(0x9d2c5680a76b04c5ULL ^ static_cast<std::uint64_t>(axis));
    for (auto c : transverse) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    const double u = counter_uniform(spec.seed, 1, h);
    const double pareto = std::pow(u, -1.0 / spec.alpha0);
    return pareto < 1.0 ? 1.0 : pareto;
}

Environment gen_layered(const LatticeGraph& g, const LayeredSpec& spec) {
    if (!(spec.alpha0 > 0.0))
        throw std::invalid_argument("layered tail exponent alpha0 must be > 0");
    if (g.dimension() < 2)
        throw std::invalid_argument("layered environment needs d >= 2");
    Environment env;
    env.graph = &g;
    env.seed = spec.seed;
    env.omega.resize(g.edge_count());
    std::vector<std::int64_t> transverse(g.dimension() - 1);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        const auto c = g.coords(ed.tail);
        int k = 0;
        for (int i = 0; i < g.dimension(); ++i)
            if (i != ed.axis) transverse[k++] = c[i];
        env.omega[e] = layered_line_value(spec, ed.axis, transverse);
    }
    env.spec = "{\"kind\":\"layered\",\"alpha0\":" + std::to_string(spec.alpha0) + "}";
    return env;
}

std::vector<double> mu(const Environment& env) {
    const auto& g = *env.graph;
    std::vector<double> m(g.vertex_count(), 0.0);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        m[ed.tail] += env.omega[e];
        m[ed.head] += env.omega[e];
    }
    return m;
}

std::vector<double> nu(const Environment& env) {
    const auto& g = *env.graph;
    std::vector<double> n(g.vertex_count(), 0.0);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        n[ed.tail] += 1.0 / env.omega[e];
        n[ed.head] += 1.0 / env.omega[e];
    }
    return n;
}

SpeedMeasure speed_measure(const Environment& env, SpeedKind kind,
                           const std::vector<double>* custom_theta) {
    SpeedMeasure s;
    s.kind = kind;
    switch (kind) {
        case SpeedKind::csrw:
            s.theta = mu(env);
            break;
        case SpeedKind::vsrw:
            s.theta.assign(env.graph->vertex_count(), 1.0);
            break;
        case SpeedKind::custom:
            if (!custom_theta)
                throw std::invalid_argument("custom speed measure requires theta");
            if (static_cast<std::int64_t>(custom_theta->size()) !=
                env.graph->vertex_count())
                throw std::invalid_argument("custom theta has wrong size");
            for (double v : *custom_theta)
                if (!(v > 0.0))
                    throw std::invalid_argument("custom theta must be strictly positive");
            s.theta = *custom_theta;
            break;
    }
    return s;
}

}  // namespace rcm
