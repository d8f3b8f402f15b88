#include "rcm/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "rcm/rng.hpp"

namespace rcm {

namespace {

constexpr double kMaxLambdaT = 1e3;  // segment length cap for uniformization

struct JumpOperator {
    const Environment* env;
    const SpeedMeasure* theta;
    double lambda;
    std::vector<double> mus;

    JumpOperator(const Environment& e, const SpeedMeasure& th, double l)
        : env(&e), theta(&th), lambda(l), mus(mu(e)) {}

    // backward: (Pg)(x) = g(x) + (Lg)(x)/Lambda, row sums 1
    void apply_backward(const VertexField& g, VertexField& out) const {
        const auto& gr = *env->graph;
        out.assign(gr.vertex_count(), 0.0);
        for (std::int64_t e = 0; e < gr.edge_count(); ++e) {
            const auto& ed = gr.edge(static_cast<std::int32_t>(e));
            const double flow = env->omega[e] * (g[ed.head] - g[ed.tail]);
            out[ed.tail] += flow;
            out[ed.head] -= flow;
        }
        for (std::int64_t x = 0; x < gr.vertex_count(); ++x)
            out[x] = g[x] + out[x] / (lambda * theta->theta[x]);
    }

    // forward on distributions: (pi P)(y), column-stochastic counterpart
    void apply_forward(const VertexField& pi, VertexField& out) const {
        const auto& gr = *env->graph;
        out.assign(gr.vertex_count(), 0.0);
        for (std::int64_t e = 0; e < gr.edge_count(); ++e) {
            const auto& ed = gr.edge(static_cast<std::int32_t>(e));
            const double rate_tail = env->omega[e] / theta->theta[ed.tail];
            const double rate_head = env->omega[e] / theta->theta[ed.head];
            out[ed.head] += pi[ed.tail] * rate_tail;
            out[ed.tail] += pi[ed.head] * rate_head;
        }
        for (std::int64_t x = 0; x < gr.vertex_count(); ++x) {
            out[x] = pi[x] * (1.0 - mus[x] / (theta->theta[x] * lambda)) +
                     out[x] / lambda;
        }
    }
};

double uniformization_rate(const Environment& env, const SpeedMeasure& theta) {
    const auto mus = mu(env);
    double lambda = 0.0;
    for (std::int64_t x = 0; x < env.graph->vertex_count(); ++x)
        lambda = std::max(lambda, mus[x] / theta.theta[x]);
    return lambda;
}

// Evolves `state` over a horizon lambda*dt <= kMaxLambdaT via the Poisson
// mixture sum_k w_k P^k with weights accumulated until the tail drops below
// tail_target. Returns the certified tail and updates max_order.
template <typename Apply>
double evolve_segment(VertexField& state, double lambda_t, double tail_target,
                      std::int64_t& max_order, const Apply& apply) {
    if (lambda_t == 0.0) return 0.0;
    const std::int64_t k_cap =
        static_cast<std::int64_t>(lambda_t + 60.0 * std::sqrt(lambda_t + 10.0)) + 100;

    VertexField acc(state.size(), 0.0);
    VertexField g = state;
    VertexField scratch(state.size());
    double cum = 0.0;
    std::int64_t k = 0;
    for (;; ++k) {
        const double logw =
            -lambda_t + k * std::log(lambda_t) - std::lgamma(k + 1.0);
        const double w = std::exp(logw);
        cum += w;
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * g[i];
        if (1.0 - cum <= tail_target) break;
        if (k >= k_cap)
            throw std::runtime_error(
                "uniformization failed to reach the requested tolerance");
        apply(g, scratch);
        g.swap(scratch);
    }
    max_order = std::max(max_order, k);
    state.swap(acc);
    // pad the certificate for rounding in the weight accumulation itself
    return std::max(0.0, 1.0 - cum) +
           static_cast<double>(k + 2) * std::numeric_limits<double>::epsilon();
}

// Shared driver for backward (functions) and forward (distributions) runs.
template <typename Apply>
void run_uniformization(const Environment& env, const SpeedMeasure& theta,
                        VertexField state, const std::vector<double>& times,
                        double tol, double lambda, const Apply& apply,
                        std::vector<VertexField>& out, std::int64_t& max_order,
                        double& total_error) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (times.empty()) throw std::invalid_argument("time grid is empty");
    double prev = 0.0;
    std::int64_t n_segments = 0;
    for (double t : times) {
        if (t < prev)
            throw std::invalid_argument("times must be nonnegative ascending");
        n_segments += std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::ceil(lambda * (t - prev) / kMaxLambdaT)));
        prev = t;
    }
    const double tail_target = tol / static_cast<double>(std::max<std::int64_t>(1, n_segments));

    max_order = 0;
    total_error = 0.0;
    double t_cur = 0.0;
    for (double t : times) {
        double remaining = t - t_cur;
        while (remaining > 0.0) {
            const double dt =
                lambda > 0.0 ? std::min(remaining, kMaxLambdaT / lambda) : remaining;
            total_error +=
                evolve_segment(state, lambda * dt, tail_target, max_order, apply);
            remaining -= dt;
        }
        t_cur = t;
        out.push_back(state);
    }
}

}  // namespace

CauchySolution solve_cauchy(const Environment& env, const SpeedMeasure& theta,
                            const VertexField& f,
                            const std::vector<double>& times, double tol) {
    if (static_cast<std::int64_t>(f.size()) != env.graph->vertex_count())
        throw std::invalid_argument("initial condition has wrong size");
    CauchySolution sol;
    sol.times = times;
    sol.uniformization_rate = uniformization_rate(env, theta);
    const JumpOperator op(env, theta, sol.uniformization_rate);
    double sup = 0.0;
    for (double v : f) sup = std::max(sup, std::abs(v));
    double tail = 0.0;
    run_uniformization(
        env, theta, f, times, tol / std::max(sup, 1e-300), sol.uniformization_rate,
        [&](const VertexField& g, VertexField& o) { op.apply_backward(g, o); },
        sol.u, sol.truncation_order, tail);
    sol.truncation_error = tail * sup;
    return sol;
}

HeatKernelField heat_kernel_field(const Environment& env,
                                  const SpeedMeasure& theta, std::int32_t x0,
                                  const std::vector<double>& times, double tol) {
    if (x0 < 0 || x0 >= env.graph->vertex_count())
        throw std::out_of_range("source out of range");
    HeatKernelField field;
    field.source = x0;
    field.times = times;
    field.uniformization_rate = uniformization_rate(env, theta);
    const JumpOperator op(env, theta, field.uniformization_rate);

    VertexField pi(env.graph->vertex_count(), 0.0);
    pi[x0] = 1.0;
    run_uniformization(
        env, theta, std::move(pi), times, tol, field.uniformization_rate,
        [&](const VertexField& g, VertexField& o) { op.apply_forward(g, o); },
        field.prob, field.truncation_order, field.truncation_error);

    field.density.reserve(field.prob.size());
    for (const auto& row : field.prob) {
        VertexField dens(row.size());
        for (std::size_t y = 0; y < row.size(); ++y)
            dens[y] = row[y] / theta.theta[y];
        field.density.push_back(std::move(dens));
    }
    return field;
}

WalkerStats mc_walk(const Environment& env, const SpeedMeasure& theta,
                    std::int32_t x0, double t_end, std::int64_t n_walkers,
                    std::uint64_t seed, const std::vector<double>& observe_times,
                    int threads) {
    if (n_walkers < 1) throw std::invalid_argument("need at least one walker");
    if (!std::is_sorted(observe_times.begin(), observe_times.end()))
        throw std::invalid_argument("observation times must be ascending");
    const auto& g = *env.graph;
    const auto mus = mu(env);
    const auto n = g.vertex_count();
    const std::size_t n_obs = observe_times.size();

    threads = std::max(1, threads);
    std::vector<std::vector<std::int64_t>> counts(
        threads, std::vector<std::int64_t>(n_obs * n, 0));

    auto run_chunk = [&](int chunk, std::int64_t w_lo, std::int64_t w_hi) {
        auto& c = counts[chunk];
        for (std::int64_t w = w_lo; w < w_hi; ++w) {
            std::mt19937_64 rng(counter_hash(seed, 2, static_cast<std::uint64_t>(w)));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            std::int32_t x = x0;
            double t = 0.0;
            std::size_t obs = 0;
            while (obs < n_obs) {
                const double rate = mus[x] / theta.theta[x];
                const double hold = -std::log1p(-unif(rng)) / rate;
                const double t_next = t + hold;
                while (obs < n_obs && observe_times[obs] < t_next &&
                       observe_times[obs] <= t_end) {
                    ++c[obs * n + x];
                    ++obs;
                }
                if (obs >= n_obs || t_next > t_end) {
                    while (obs < n_obs) {  // walker frozen past t_end
                        ++c[obs * n + x];
                        ++obs;
                    }
                    break;
                }
                t = t_next;
                // jump with probability omega(x,y)/mu(x)
                double u = unif(rng) * mus[x];
                for (const auto& inc : g.neighbors(x)) {
                    u -= env.omega[inc.edge];
                    if (u <= 0.0) {
                        x = inc.neighbor;
                        break;
                    }
                }
            }
        }
    };

    if (threads == 1) {
        run_chunk(0, 0, n_walkers);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t per = (n_walkers + threads - 1) / threads;
        for (int c = 0; c < threads; ++c)
            pool.emplace_back(run_chunk, c, per * c,
                              std::min<std::int64_t>(n_walkers, per * (c + 1)));
        for (auto& th : pool) th.join();
    }

    WalkerStats stats;
    stats.n_walkers = n_walkers;
    stats.observe_times = observe_times;
    stats.seed = seed;
    for (std::size_t o = 0; o < n_obs; ++o) {
        VertexField freq(n, 0.0);
        for (int c = 0; c < threads; ++c)
            for (std::int64_t y = 0; y < n; ++y)
                freq[y] += static_cast<double>(counts[c][o * n + y]);
        for (auto& v : freq) v /= static_cast<double>(n_walkers);
        stats.frequency.push_back(std::move(freq));
    }
    return stats;
}

double carne_F(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("F(s) requires s > 0");
    const double root = std::sqrt(1.0 + s * s);
    return (root - 1.0) / s - std::log(s + root);
}

double carne_F_numeric(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("F(s) requires s > 0");
    const auto f = [s](double l) { return -l + (std::cosh(l) - 1.0) / s; };
    double a = 1e-12, b = 50.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    for (int i = 0; i < 200; ++i) {
        if (f(c) < f(d))
            b = d;
        else
            a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    return f(0.5 * (a + b));
}

CarneBounds carne_F_bounds(double s) {
    CarneBounds b;
    b.value = carne_F(s);
    b.small_s_bound_ok = s > 3.0 || b.value <= -s / 20.0;
    b.large_s_bound_ok =
        s < std::exp(1.0) || b.value <= 1.0 - std::log(2.0 * s);
    return b;
}

AprioriReport apriori_check(const Environment& env, const SpeedMeasure& theta,
                            const VertexField& phi, const VertexField& f,
                            const std::vector<double>& times, double tol) {
    AprioriReport rep;
    rep.h = davies_tilt_h(env, theta, phi);
    const auto sol = solve_cauchy(env, theta, f, times, tol);
    rep.truncation_error = sol.truncation_error;

    const auto l2_theta = [&](const VertexField& v) {
        double s = 0.0;
        for (std::size_t x = 0; x < v.size(); ++x)
            s += v[x] * v[x] * theta.theta[x];
        return std::sqrt(s);
    };
    VertexField phif(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) phif[x] = phi[x] * f[x];
    const double rhs_base = l2_theta(phif);

    for (std::size_t i = 0; i < times.size(); ++i) {
        VertexField v(f.size());
        for (std::size_t x = 0; x < f.size(); ++x) v[x] = phi[x] * sol.u[i][x];
        const double actual = l2_theta(v);
        const double bound = std::exp(rep.h * times[i]) * rhs_base;
        rep.margins.push_back({times[i], bound, actual, bound - actual});
    }
    return rep;
}

EnvelopeValue envelope_value(const EnvelopeParams& params,
                             EnvelopeRegime regime, double t, double d_graph,
                             double d_intrinsic) {
    if (!(t > 0.0)) throw std::invalid_argument("envelope needs t > 0");
    const double prefactor = params.c2 * std::pow(t, -params.d / 2.0) *
                             std::pow(1.0 + d_graph / std::sqrt(t), params.gamma);
    if (regime == EnvelopeRegime::gaussian) {
        if (d_intrinsic > params.c1 * t) return {false, 0.0};
        return {true,
                prefactor * std::exp(-params.c3 * d_intrinsic * d_intrinsic / t)};
    }
    if (d_intrinsic < params.c5 * t) return {false, 0.0};
    const double log_factor = std::max(1.0, std::log(d_intrinsic / t));
    return {true, prefactor * std::exp(-params.c4 * d_intrinsic * log_factor)};
}

EnvelopeFitReport envelope_fit_and_verify(const HeatKernelField& field,
                                          const MetricField& metric,
                                          const LatticeGraph& g,
                                          EnvelopeRegime regime, double c1,
                                          double c5, int d,
                                          double density_floor) {
    if (field.source != metric.source)
        throw std::invalid_argument("field and metric have different sources");
    const auto graph_dist = g.graph_distance_field(field.source);
    const double floor =
        std::max(density_floor, 10.0 * field.truncation_error);

    struct Sample {
        double y;   // log p + (d/2) log t
        double x2;  // log(1 + d_graph/sqrt(t))
        double x3;  // decay feature, regime dependent
        double t, dg, di, p;
    };
    std::vector<Sample> fit, test;
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < field.times.size(); ++i) {
        const double t = field.times[i];
        if (!(t > 0.0)) continue;
        for (std::int64_t y = 0; y < g.vertex_count(); ++y) {
            const double p = field.density[i][y];
            if (!(p > floor)) continue;
            const double di = metric.dist[y];
            const bool in_regime = regime == EnvelopeRegime::gaussian
                                       ? di <= c1 * t
                                       : di >= c5 * t;
            if (!in_regime) continue;
            Sample s;
            s.t = t;
            s.dg = static_cast<double>(graph_dist[y]);
            s.di = di;
            s.p = p;
            s.y = std::log(p) + (d / 2.0) * std::log(t);
            s.x2 = std::log(1.0 + s.dg / std::sqrt(t));
            s.x3 = regime == EnvelopeRegime::gaussian
                       ? di * di / t
                       : di * std::max(1.0, std::log(di / t));
            ((idx++ % 2 == 0) ? fit : test).push_back(s);
        }
    }
    if (fit.empty() || test.empty())
        throw std::invalid_argument("empty regime sample set");

    // Chebyshev fit: for candidate (gamma, c) the tight intercept is
    // max_i (y - gamma x2 + c x3); minimise it over a coarse grid, then refine.
    const auto intercept = [&](double gamma, double c) {
        double b0 = -std::numeric_limits<double>::infinity();
        for (const auto& s : fit) b0 = std::max(b0, s.y - gamma * s.x2 + c * s.x3);
        return b0;
    };
    double best_gamma = 0.0, best_c = 0.25, best_b0 = intercept(0.0, 0.25);
    auto scan = [&](double g_lo, double g_hi, double g_step, double c_lo,
                    double c_hi, double c_step) {
        for (double ga = g_lo; ga <= g_hi + 1e-12; ga += g_step) {
            for (double c = c_lo; c <= c_hi + 1e-12; c += c_step) {
                const double b0 = intercept(ga, c);
                if (b0 < best_b0) {
                    best_b0 = b0;
                    best_gamma = ga;
                    best_c = c;
                }
            }
        }
    };
    scan(0.0, 8.0, 0.5, 0.01, 1.0, 0.05);
    scan(std::max(0.0, best_gamma - 0.5), best_gamma + 0.5, 0.05,
         std::max(0.005, best_c - 0.05), best_c + 0.05, 0.005);

    EnvelopeFitReport rep;
    rep.regime = regime;
    rep.params.c1 = c1;
    rep.params.c5 = c5;
    rep.params.d = d;
    rep.params.gamma = best_gamma;
    // fixed 5% headroom, applied before the test half is consulted
    rep.params.c2 = std::exp(best_b0) * 1.05;
    if (regime == EnvelopeRegime::gaussian)
        rep.params.c3 = best_c;
    else
        rep.params.c4 = best_c;
    rep.fit_count = static_cast<std::int64_t>(fit.size());
    rep.test_count = static_cast<std::int64_t>(test.size());

    for (const auto& s : test) {
        const auto env_val = envelope_value(rep.params, regime, s.t, s.dg, s.di);
        const double ratio = s.p / env_val.value;
        rep.worst_test_ratio = std::max(rep.worst_test_ratio, ratio);
        if (s.p > env_val.value) ++rep.test_violations;
    }
    return rep;
}

}  // namespace rcm
