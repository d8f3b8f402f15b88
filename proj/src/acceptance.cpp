#include "rcm/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "rcm/calculus.hpp"
#include "rcm/environment.hpp"
#include "rcm/heat.hpp"
#include "rcm/lattice.hpp"
#include "rcm/metric.hpp"
#include "rcm/rng.hpp"

namespace rcm {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Infimum over all simple paths from x to y of the chemical path weight,
// by exhaustive DFS with branch-and-bound. Independent of the Dijkstra
// implementation under test.
double brute_force_distance(const Environment& env, const SpeedMeasure& theta,
                            std::int32_t x, std::int32_t y) {
    const auto& g = *env.graph;
    std::vector<double> weight(g.edge_count());
    for (std::int64_t e = 0; e < g.edge_count(); ++e)
        weight[e] = chemical_edge_weight(env, theta, static_cast<std::int32_t>(e));

    double best = std::numeric_limits<double>::infinity();
    std::vector<char> visited(g.vertex_count(), 0);
    std::function<void(std::int32_t, double)> dfs = [&](std::int32_t v, double acc) {
        if (acc >= best) return;
        if (v == y) {
            best = acc;
            return;
        }
        visited[v] = 1;
        for (const auto& inc : g.neighbors(v))
            if (!visited[inc.neighbor]) dfs(inc.neighbor, acc + weight[inc.edge]);
        visited[v] = 0;
    };
    dfs(x, 0.0);
    return best;
}

using Criterion = CriterionResult (*)(int threads);

CriterionResult c1_two_state_oracle(int) {
    const auto g = LatticeGraph::build(1, {2}, Boundary::box);
    const auto env = gen_constant(g, 1.0);
    const auto theta = speed_measure(env, SpeedKind::vsrw);
    const double tol = 1e-10;
    const auto field = heat_kernel_field(env, theta, 0, {0.1, 1.0, 10.0}, tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < field.times.size(); ++i) {
        const double expect = (1.0 - std::exp(-2.0 * field.times[i])) / 2.0;
        worst = std::max(worst, std::abs(field.prob[i][1] - expect));
    }
    return {1, "two-state heat kernel matches (1-e^{-2t})/2", worst <= tol,
            "max error " + fmt(worst), 0.0};
}

CriterionResult c2_metric_oracle(int) {
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = LatticeGraph::build(2, {4, 4}, Boundary::box);
        const auto env =
            gen_iid(g, {IidDist::Kind::lognormal, 0.0, 1.5}, 900 + trial);
        const auto theta = speed_measure(env, SpeedKind::vsrw);
        const auto field = intrinsic_distance_field(env, theta, 0);
        for (std::int32_t y = 0; y < g.vertex_count(); ++y) {
            const double brute = brute_force_distance(env, theta, 0, y);
            worst = std::max(worst, std::abs(field.dist[y] - brute));
        }
    }
    ok = worst <= 1e-12;

    bool csrw_exact = true;
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = LatticeGraph::build(2, {16, 16}, Boundary::box);
        const auto env = gen_iid(g, {IidDist::Kind::pareto, 2.0, 1.0}, 50 + trial);
        const auto theta = speed_measure(env, SpeedKind::csrw);
        const auto field = intrinsic_distance_field(env, theta, 17);
        const auto bfs = g.graph_distance_field(17);
        for (std::int32_t y = 0; y < g.vertex_count(); ++y)
            if (field.dist[y] != static_cast<double>(bfs[y])) csrw_exact = false;
    }
    return {2, "shortest-path metric matches path enumeration; CSRW = graph distance",
            ok && csrw_exact,
            "max VSRW error " + fmt(worst) +
                (csrw_exact ? ", CSRW exact" : ", CSRW MISMATCH"),
            0.0};
}

CriterionResult c3_certificate(int) {
    double worst_gap = 0.0;
    bool feasible = true;
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = LatticeGraph::build(2, {8, 8}, Boundary::box);
        const auto env =
            gen_iid(g, {IidDist::Kind::lognormal, 0.0, 1.0}, 7000 + trial);
        const auto theta = speed_measure(env, SpeedKind::vsrw);

        std::vector<MetricField> fields;
        for (std::int32_t x = 0; x < g.vertex_count(); ++x) {
            fields.push_back(intrinsic_distance_field(env, theta, x));
            if (!certify_feasible(env, theta, fields.back().dist).feasible)
                feasible = false;
        }
        for (std::int32_t x = 0; x < g.vertex_count(); ++x)
            for (std::int32_t y = 0; y < g.vertex_count(); ++y)
                worst_gap = std::max(
                    worst_gap, std::abs(fields[y].dist[x] -
                                        (fields[x].dist[y] - fields[x].dist[x])));
    }
    return {3, "distance field certifies the variational characterisation",
            feasible && worst_gap <= 1e-10,
            std::string(feasible ? "feasible" : "INFEASIBLE") + ", max gap " +
                fmt(worst_gap),
            0.0};
}

CriterionResult c4_semigroup(int) {
    const auto g = LatticeGraph::build(2, {16, 16}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::pareto, 4.0, 1.0}, 42);
    const auto theta = speed_measure(env, SpeedKind::csrw);
    const double tol = 1e-10;
    const std::int32_t x = g.center_vertex(), y = 3;

    const std::vector<double> times{1, 2, 4, 8};
    const auto from_x = heat_kernel_field(env, theta, x, times, tol);
    const auto from_y = heat_kernel_field(env, theta, y, times, tol);
    const double eps = std::max(from_x.truncation_error, from_y.truncation_error);

    bool ok = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double mass = 0.0, min_prob = 0.0;
        for (std::int64_t z = 0; z < g.vertex_count(); ++z) {
            mass += from_x.prob[i][z];
            min_prob = std::min(min_prob, from_x.prob[i][z]);
        }
        if (std::abs(mass - 1.0) > eps || min_prob < 0.0) ok = false;
        // reversibility: density fields are symmetric in source/target
        if (std::abs(from_x.density[i][y] - from_y.density[i][x]) > 2 * eps)
            ok = false;
    }
    // Chapman-Kolmogorov: t + t -> 2t for t = 1, 2, 4
    double worst_ck = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double sum = 0.0;
        for (std::int64_t z = 0; z < g.vertex_count(); ++z)
            sum += from_x.density[i][z] * from_y.density[i][z] * theta.theta[z];
        worst_ck = std::max(worst_ck, std::abs(sum - from_x.density[i + 1][y]));
    }
    if (worst_ck > 3 * eps) ok = false;
    detail << "eps_unif " << fmt(eps) << ", worst CK error " << fmt(worst_ck);
    return {4, "conservation, positivity, Chapman-Kolmogorov, reversibility", ok,
            detail.str(), 0.0};
}

CriterionResult c5_ondiagonal_slope(int) {
    const auto g = LatticeGraph::build(2, {128, 128}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::uniform, 1.0, 2.0}, 7);
    const auto theta = speed_measure(env, SpeedKind::vsrw);
    const std::int32_t x = g.center_vertex();
    const std::vector<double> times{4, 8, 16, 32, 64};
    const auto field = heat_kernel_field(env, theta, x, times, 1e-8);

    std::vector<double> lt, lp;
    for (std::size_t i = 0; i < times.size(); ++i) {
        lt.push_back(std::log(times[i]));
        lp.push_back(std::log(field.density[i][x]));
    }
    const double slope = fit_slope(lt, lp);
    return {5, "on-diagonal log-log slope is -d/2", std::abs(slope + 1.0) <= 0.10,
            "slope " + fmt(slope), 0.0};
}

CriterionResult c6_envelope(int) {
    const auto g = LatticeGraph::build(2, {128, 128}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::uniform, 1.0, 2.0}, 7);
    const auto theta = speed_measure(env, SpeedKind::vsrw);
    const std::int32_t x = g.center_vertex();
    const std::vector<double> times{4, 8, 16, 32, 64};
    const auto field = heat_kernel_field(env, theta, x, times, 1e-8);
    const auto metric = intrinsic_distance_field(env, theta, x);

    const auto rep = envelope_fit_and_verify(field, metric, g,
                                             EnvelopeRegime::gaussian,
                                             /*c1=*/1.0, /*c5=*/8.0, /*d=*/2);
    std::ostringstream detail;
    detail << rep.test_violations << " violations on " << rep.test_count
           << " held-out cells, c2=" << fmt(rep.params.c2)
           << " c3=" << fmt(rep.params.c3) << " gamma=" << fmt(rep.params.gamma)
           << ", worst ratio " << fmt(rep.worst_test_ratio);
    return {6, "fitted Gaussian-regime envelope holds out of sample",
            rep.test_violations == 0, detail.str(), 0.0};
}

CriterionResult c7_apriori(int) {
    const auto g = LatticeGraph::build(2, {8, 8}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::pareto, 4.0, 1.0}, 11);
    const auto theta = speed_measure(env, SpeedKind::vsrw);
    std::vector<double> times;
    for (int i = 0; i <= 16; ++i) times.push_back(0.25 * i);

    bool ok = true;
    double worst_rel = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::mt19937_64 rng(counter_hash(123, 3, trial));
        std::uniform_real_distribution<double> half(-0.5, 0.5);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        VertexField psi(g.vertex_count()), phi(g.vertex_count()), f(g.vertex_count());
        for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
            psi[v] = half(rng);  // |grad psi| <= 1 by construction
            phi[v] = std::exp(psi[v]);
            f[v] = unit(rng);
        }
        const auto rep = apriori_check(env, theta, phi, f, times, 1e-10);
        const double scale = rep.margins.front().bound;  // ||phi f||_2 at t=0
        for (const auto& m : rep.margins) {
            worst_rel = std::min(worst_rel, m.margin / scale);
            if (m.margin < -1e-8 * scale) ok = false;
        }
    }
    return {7, "tilted-semigroup growth bounded by e^{h t}", ok,
            "worst relative margin " + fmt(worst_rel), 0.0};
}

CriterionResult c8_carne_F(int) {
    double worst = 0.0;
    bool bounds_ok = true;
    for (int i = 0; i < 50; ++i) {
        const double s = std::pow(10.0, -3.0 + 6.0 * i / 49.0);
        worst = std::max(worst, std::abs(carne_F(s) - carne_F_numeric(s)));
        const auto b = carne_F_bounds(s);
        if (!b.small_s_bound_ok || !b.large_s_bound_ok) bounds_ok = false;
    }
    return {8, "F(s) closed form matches the definitional infimum with its bounds",
            worst <= 1e-10 && bounds_ok, "max mismatch " + fmt(worst), 0.0};
}

CriterionResult c9_greedy_slope(int) {
    const std::vector<std::int64_t> checkpoints{1000, 10000, 100000};
    double mean_slope = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        const LayeredSpec spec{2.0, 1000 + static_cast<std::uint64_t>(s)};
        const auto scaling = greedy_path_layered(
            spec, 2, GreedyVariant::first_step_restricted, checkpoints);
        mean_slope += path_sum_check(scaling, 2.0, 2).loglog_slope;
    }
    mean_slope /= seeds;
    const bool ok = mean_slope <= 0.80 && mean_slope >= 0.5;
    return {9, "layered greedy-path sum grows no faster than L^{1-1/(2a)}", ok,
            "mean slope " + fmt(mean_slope) + " (bound 0.80)", 0.0};
}

CriterionResult c10_records(int) {
    // N(L)/ln L over i.i.d. continuous sequences
    double mean_ratio = 0.0;
    const int seeds = 50;
    const std::int64_t L = 1000000;
    for (int s = 0; s < seeds; ++s) {
        std::vector<double> values(L);
        for (std::int64_t i = 0; i < L; ++i)
            values[i] = counter_uniform(5000 + s, 4, static_cast<std::uint64_t>(i));
        mean_ratio += static_cast<double>(record_stats(values).record_count) /
                      std::log(static_cast<double>(L));
    }
    mean_ratio /= seeds;
    const bool ratio_ok = mean_ratio >= 0.75 && mean_ratio <= 1.25;

    // running-max lower bound M_n >= n^{1/alpha} along layered greedy paths
    double mean_fraction = 0.0;
    const int path_seeds = 20;
    const double alpha = 3.0;  // > alpha0 = 2
    for (int s = 0; s < path_seeds; ++s) {
        const LayeredSpec spec{2.0, 9000 + static_cast<std::uint64_t>(s)};
        const auto scaling = greedy_path_layered(
            spec, 2, GreedyVariant::first_step_restricted, {100000});
        const auto& running = scaling.full.running_max;
        std::int64_t violations = 0, total = 0;
        for (std::size_t n = 1000; n < running.size(); ++n) {
            ++total;
            if (running[n] < std::pow(static_cast<double>(n), 1.0 / alpha))
                ++violations;
        }
        mean_fraction += static_cast<double>(violations) / total;
    }
    mean_fraction /= path_seeds;
    const bool max_ok = mean_fraction <= 0.05;
    return {10, "record counts track ln L; running maxima dominate n^{1/a}",
            ratio_ok && max_ok,
            "mean N(L)/ln L " + fmt(mean_ratio) + ", violation fraction " +
                fmt(mean_fraction),
            0.0};
}

CriterionResult c11_lower_bound(int) {
    const auto g = LatticeGraph::build(2, {260, 260}, Boundary::box);
    const auto env = gen_layered(g, {2.0, 17});
    const auto theta = speed_measure(env, SpeedKind::vsrw);
    const auto rep =
        lower_bound_report(env, theta, g.center_vertex(), 1.9, {16, 32, 64, 128});
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& row : rep.rows) {
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
    }
    const bool ok = rep.c_hat > 0.0 && hi / lo <= 4.0;
    return {11, "intrinsic metric dominates d^{1-(d-1)/(2p)} with stable constant",
            ok, "c_hat " + fmt(rep.c_hat) + ", spread " + fmt(hi / lo), 0.0};
}

CriterionResult c12_mc_vs_exact(int threads) {
    const auto g = LatticeGraph::build(2, {16, 16}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::pareto, 4.0, 1.0}, 42);
    const auto theta = speed_measure(env, SpeedKind::csrw);
    const std::int32_t x = g.center_vertex();
    const double t = 8.0;
    const std::int64_t walkers = 100000;

    const auto exact = heat_kernel_field(env, theta, x, {t}, 1e-10);
    const auto stats = mc_walk(env, theta, x, t, walkers, 2024, {t}, threads);

    std::int64_t cells = 0, agree = 0;
    for (std::int64_t y = 0; y < g.vertex_count(); ++y) {
        const double p = exact.prob[0][y];
        if (p * walkers < 10.0) continue;
        ++cells;
        const double se = std::sqrt(p * (1.0 - p) / walkers);
        if (std::abs(stats.frequency[0][y] - p) <= 3.0 * se) ++agree;
    }
    const double frac = cells > 0 ? static_cast<double>(agree) / cells : 0.0;
    return {12, "Monte Carlo frequencies agree with uniformization", frac >= 0.95,
            fmt(frac * 100.0) + "% of " + std::to_string(cells) +
                " cells within 3 SE",
            0.0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool verbose, int threads) {
    const Criterion criteria[] = {
        c1_two_state_oracle, c2_metric_oracle, c3_certificate, c4_semigroup,
        c5_ondiagonal_slope, c6_envelope,      c7_apriori,     c8_carne_F,
        c9_greedy_slope,     c10_records,      c11_lower_bound, c12_mc_vs_exact,
    };
    std::vector<CriterionResult> results;
    for (auto criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        auto res = criterion(threads);
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (verbose) {
            std::printf("[%s] %2d. %s  (%s; %.2fs)\n", res.pass ? "PASS" : "FAIL",
                        res.id, res.name.c_str(), res.detail.c_str(), res.seconds);
            std::fflush(stdout);
        }
        results.push_back(std::move(res));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const auto& r) { return r.pass; });
}

}  // namespace rcm
