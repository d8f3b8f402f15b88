#include "rcm/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

EdgeField gradient(const LatticeGraph& g, const VertexField& f) {
    if (static_cast<std::int64_t>(f.size()) != g.vertex_count())
        throw std::invalid_argument("vertex function has wrong size");
    EdgeField out(g.edge_count());
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        out[e] = f[ed.tail] - f[ed.head];
    }
    return out;
}

VertexField adjoint(const LatticeGraph& g, const EdgeField& F) {
    if (static_cast<std::int64_t>(F.size()) != g.edge_count())
        throw std::invalid_argument("edge field has wrong size");
    VertexField out(g.vertex_count(), 0.0);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        out[ed.tail] += F[e];
        out[ed.head] -= F[e];
    }
    return out;
}

EdgeField carre_du_champ(const Environment& env, const VertexField& f,
                         const VertexField& g) {
    const auto& gr = *env.graph;
    EdgeField out(gr.edge_count());
    for (std::int64_t e = 0; e < gr.edge_count(); ++e) {
        const auto& ed = gr.edge(static_cast<std::int32_t>(e));
        out[e] = env.omega[e] * (f[ed.tail] - f[ed.head]) * (g[ed.tail] - g[ed.head]);
    }
    return out;
}

double dirichlet_form(const Environment& env, const VertexField& f,
                      const VertexField& g) {
    const auto& gr = *env.graph;
    double sum = 0.0;
    for (std::int64_t e = 0; e < gr.edge_count(); ++e) {
        const auto& ed = gr.edge(static_cast<std::int32_t>(e));
        sum += env.omega[e] * (f[ed.tail] - f[ed.head]) * (g[ed.tail] - g[ed.head]);
    }
    return sum;
}

VertexField generator_apply(const Environment& env, const SpeedMeasure& theta,
                            const VertexField& f) {
    const auto& gr = *env.graph;
    VertexField out(gr.vertex_count(), 0.0);
    for (std::int64_t e = 0; e < gr.edge_count(); ++e) {
        const auto& ed = gr.edge(static_cast<std::int32_t>(e));
        const double flow = env.omega[e] * (f[ed.head] - f[ed.tail]);
        out[ed.tail] += flow;
        out[ed.head] -= flow;
    }
    for (std::int64_t x = 0; x < gr.vertex_count(); ++x) out[x] /= theta.theta[x];
    return out;
}

VertexField tilted_generator_apply(const Environment& env,
                                   const SpeedMeasure& theta,
                                   const VertexField& phi,
                                   const VertexField& g) {
    for (double v : phi)
        if (!(v > 0.0)) throw std::invalid_argument("phi must be strictly positive");
    VertexField scaled(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) scaled[x] = g[x] / phi[x];
    auto out = generator_apply(env, theta, scaled);
    for (std::size_t x = 0; x < g.size(); ++x) out[x] *= phi[x];
    return out;
}

double davies_tilt_h(const Environment& env, const SpeedMeasure& theta,
                     const VertexField& phi) {
    for (double v : phi)
        if (!(v > 0.0)) throw std::invalid_argument("phi must be strictly positive");
    const auto& gr = *env.graph;
    VertexField acc(gr.vertex_count(), 0.0);
    for (std::int64_t e = 0; e < gr.edge_count(); ++e) {
        const auto& ed = gr.edge(static_cast<std::int32_t>(e));
        const double dphi = phi[ed.tail] - phi[ed.head];
        const double dinv = 1.0 / phi[ed.tail] - 1.0 / phi[ed.head];
        const double term = std::abs(env.omega[e] * dphi * dinv);
        acc[ed.tail] += term;
        acc[ed.head] += term;
    }
    double h = 0.0;
    for (std::int64_t x = 0; x < gr.vertex_count(); ++x)
        h = std::max(h, acc[x] / (2.0 * theta.theta[x]));
    return h;
}

double weighted_norm(const VertexField& f, double p,
                     const std::vector<std::int32_t>& ball,
                     const VertexField* phi) {
    if (ball.empty()) throw std::invalid_argument("norm over empty vertex set");
    if (p == kInf) {
        double m = 0.0;
        for (auto v : ball) m = std::max(m, std::abs(f[v]));
        return m;
    }
    if (p < 1.0) throw std::invalid_argument("p must be in [1, inf]");
    double sum = 0.0;
    for (auto v : ball) {
        const double w = phi ? (*phi)[v] : 1.0;
        sum += std::pow(std::abs(f[v]), p) * w;
    }
    return std::pow(sum / static_cast<double>(ball.size()), 1.0 / p);
}

double spacetime_norm(const std::vector<double>& times,
                      const std::vector<VertexField>& u, double p,
                      double p_prime, double t_lo, double t_hi,
                      const std::vector<std::int32_t>& ball,
                      const VertexField& theta) {
    if (times.size() != u.size())
        throw std::invalid_argument("time grid and samples differ in length");
    if (times.empty() || times.front() > t_lo || times.back() < t_hi)
        throw std::invalid_argument("time grid does not cover the interval");

    std::vector<double> norms;
    std::vector<double> ts;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        ts.push_back(times[i]);
        norms.push_back(weighted_norm(u[i], p, ball, &theta));
    }
    if (ts.empty()) throw std::invalid_argument("no grid points inside the interval");
    if (p_prime == kInf) return *std::max_element(norms.begin(), norms.end());
    if (ts.size() == 1) return norms.front();
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        integral += 0.5 * (ts[i + 1] - ts[i]) *
                    (std::pow(norms[i], p_prime) + std::pow(norms[i + 1], p_prime));
    }
    return std::pow(integral / (ts.back() - ts.front()), 1.0 / p_prime);
}

CondPqr cond_pqr(const NormSpec& spec) {
    const auto inv = [](double x) { return x == kInf ? 0.0 : 1.0 / x; };
    if ((spec.p <= 1.0 && spec.p != kInf) || (spec.q <= 1.0 && spec.q != kInf) ||
        (spec.r <= 1.0 && spec.r != kInf))
        throw std::invalid_argument("exponents must lie in (1, inf]");
    const double r_factor = spec.r == kInf ? 1.0 : (spec.r - 1.0) / spec.r;
    const double lhs = inv(spec.r) + inv(spec.p) * r_factor + inv(spec.q);
    const double rhs = 2.0 / spec.d_prime;
    return {lhs < rhs, lhs, rhs};
}

AssumptionReport integrability_product(const Environment& env,
                                       const SpeedMeasure& theta,
                                       std::int32_t x, int n,
                                       const NormSpec& spec, double c_int) {
    const auto& g = *env.graph;
    const auto ball = g.ball(x, n);
    const auto mu_field = mu(env);
    const auto nu_field = nu(env);
    const auto n_vertices = g.vertex_count();

    VertexField f1(n_vertices), f2(n_vertices), f3(n_vertices), f4(n_vertices);
    for (std::int64_t v = 0; v < n_vertices; ++v) {
        f1[v] = std::max(1.0, mu_field[v] / theta.theta[v]);
        f2[v] = std::max(1.0, nu_field[v]);
        f3[v] = std::max(1.0, theta.theta[v]);
        f4[v] = std::max(1.0, 1.0 / theta.theta[v]);
    }
    AssumptionReport rep;
    rep.factor_mu_theta = weighted_norm(f1, spec.p, ball, &theta.theta);
    rep.factor_nu = weighted_norm(f2, spec.q, ball);
    rep.factor_theta = weighted_norm(f3, spec.r, ball);
    rep.factor_inv_theta = weighted_norm(f4, spec.q, ball);
    rep.product = rep.factor_mu_theta * rep.factor_nu * rep.factor_theta *
                  rep.factor_inv_theta;
    rep.c_int = c_int;
    rep.radius = n;
    rep.center = x;
    rep.pass = rep.product <= c_int;
    rep.clipped = g.ball_clipped(x, n);
    return rep;
}

double m_p_statistic(const Environment& env, const SpeedMeasure& theta,
                     std::int32_t x, int n, double p) {
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");
    const auto& g = *env.graph;
    const auto ball = g.ball(x, n);
    const auto mu_field = mu(env);
    VertexField f(g.vertex_count());
    for (std::int64_t v = 0; v < g.vertex_count(); ++v)
        f[v] = std::max(1.0, mu_field[v] / theta.theta[v]);
    return weighted_norm(f, p, ball);
}

}  // namespace rcm
