#include "rcm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace rcm {

double chemical_edge_weight(const Environment& env, const SpeedMeasure& theta,
                            std::int32_t e) {
    const auto& ed = env.graph->edge(e);
    const double th = std::min(theta.theta[ed.tail], theta.theta[ed.head]);
    return std::sqrt(std::min(1.0, th / env.omega[e]));
}

MetricField intrinsic_distance_field(const Environment& env,
                                     const SpeedMeasure& theta,
                                     std::int32_t x) {
    const auto& g = *env.graph;
    if (x < 0 || x >= g.vertex_count()) throw std::out_of_range("source out of range");

    std::vector<double> weight(g.edge_count());
    for (std::int64_t e = 0; e < g.edge_count(); ++e)
        weight[e] = chemical_edge_weight(env, theta, static_cast<std::int32_t>(e));

    MetricField field;
    field.source = x;
    field.dist.assign(g.vertex_count(), std::numeric_limits<double>::infinity());
    field.dist[x] = 0.0;

    using Item = std::pair<double, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, x});
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > field.dist[v]) continue;
        for (const auto& inc : g.neighbors(v)) {
            const double nd = d + weight[inc.edge];
            if (nd < field.dist[inc.neighbor]) {
                field.dist[inc.neighbor] = nd;
                heap.push({nd, inc.neighbor});
            }
        }
    }
    return field;
}

FeasibilityReport certify_feasible(const Environment& env,
                                   const SpeedMeasure& theta,
                                   const VertexField& psi, double tol) {
    const auto& g = *env.graph;
    FeasibilityReport rep;
    rep.feasible = true;
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        const double grad = psi[ed.tail] - psi[ed.head];
        const double energy = env.omega[e] * grad * grad;
        const double cap = std::min(theta.theta[ed.tail], theta.theta[ed.head]);
        const double g_excess = std::abs(grad) - 1.0;
        const double e_excess = energy - cap;
        if (g_excess > tol || e_excess > tol * cap) {
            rep.feasible = false;
            rep.worst_edges.push_back({static_cast<std::int32_t>(e),
                                       std::max(0.0, g_excess),
                                       std::max(0.0, e_excess)});
        }
    }
    std::sort(rep.worst_edges.begin(), rep.worst_edges.end(),
              [](const auto& a, const auto& b) {
                  return std::max(a.gradient_excess, a.energy_excess) >
                         std::max(b.gradient_excess, b.energy_excess);
              });
    if (rep.worst_edges.size() > 16) rep.worst_edges.resize(16);
    return rep;
}

double duality_gap(const Environment& env, const SpeedMeasure& theta,
                   std::int32_t x, std::int32_t y) {
    // gap = d(x,y) - (psi*(y) - psi*(x)) with psi* = d(x, .); the distance is
    // recomputed from y so the identity is not a tautology in floating point.
    const auto from_x = intrinsic_distance_field(env, theta, x);
    const auto from_y = intrinsic_distance_field(env, theta, y);
    return from_y.dist[x] - (from_x.dist[y] - from_x.dist[x]);
}

LowerBoundReport lower_bound_report(const Environment& env,
                                    const SpeedMeasure& theta, std::int32_t x,
                                    double p, const std::vector<int>& radii) {
    const auto& g = *env.graph;
    const int d = g.dimension();
    if (!(p > (d - 1) / 2.0))
        throw std::invalid_argument("p must exceed (d-1)/2 = " +
                                    std::to_string((d - 1) / 2.0));
    if (radii.empty()) throw std::invalid_argument("radius list must be nonempty");

    LowerBoundReport rep;
    rep.p = p;
    rep.exponent = 1.0 - (d - 1) / (2.0 * p);

    const auto graph_dist = g.graph_distance_field(x);
    const auto field = intrinsic_distance_field(env, theta, x);

    int max_radius = 0;
    for (int r : radii) {
        if (r < 1) throw std::invalid_argument("radii must be >= 1");
        max_radius = std::max(max_radius, r);
        double min_intrinsic = std::numeric_limits<double>::infinity();
        for (std::int64_t y = 0; y < g.vertex_count(); ++y)
            if (graph_dist[y] == r) min_intrinsic = std::min(min_intrinsic, field.dist[y]);
        if (!std::isfinite(min_intrinsic))
            throw std::invalid_argument("no vertex at graph distance " +
                                        std::to_string(r));
        rep.rows.push_back({r, min_intrinsic,
                            min_intrinsic / std::pow(static_cast<double>(r),
                                                     rep.exponent)});
    }
    rep.m_p = m_p_statistic(env, theta, x, max_radius, p);
    rep.c_hat = std::numeric_limits<double>::infinity();
    for (const auto& row : rep.rows) rep.c_hat = std::min(rep.c_hat, row.ratio);
    return rep;
}

RecordStats record_stats(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("record_stats on empty sequence");
    RecordStats stats;
    stats.running_max.resize(values.size());
    double m = values[0];
    stats.running_max[0] = m;
    stats.record_times.push_back(0);
    for (std::size_t n = 1; n < values.size(); ++n) {
        if (values[n] > m) {
            m = values[n];
            stats.record_times.push_back(static_cast<std::int64_t>(n));
        }
        stats.running_max[n] = m;
    }
    stats.record_count = static_cast<std::int64_t>(stats.record_times.size());
    return stats;
}

namespace {

GreedyPathReport finish_report(std::vector<double> conductances) {
    GreedyPathReport rep;
    double sum = 0.0;
    for (double w : conductances) sum += 1.0 / std::sqrt(w);
    const auto stats = record_stats(conductances);
    rep.edge_conductances = std::move(conductances);
    rep.running_max = stats.running_max;
    rep.record_times = stats.record_times;
    rep.record_count = stats.record_count;
    rep.inv_sqrt_sum = sum;
    return rep;
}

}  // namespace

GreedyPathReport greedy_path(const Environment& env, std::int32_t x0,
                             std::int64_t steps, GreedyVariant variant) {
    const auto& g = *env.graph;
    const int d = g.dimension();
    auto c = g.coords(x0);
    std::vector<double> conductances;
    conductances.reserve(steps);

    for (std::int64_t n = 0; n < steps; ++n) {
        const int axis_limit =
            (n == 0 && variant == GreedyVariant::first_step_restricted && d > 1)
                ? d - 1
                : d;
        int best_axis = -1;
        double best = -1.0;
        std::int32_t best_edge = -1;
        const auto v = g.vertex_at(c);
        for (const auto& inc : g.neighbors(v)) {
            const auto& ed = g.edge(inc.edge);
            if (ed.tail != v) continue;  // +e_i direction only
            if (ed.axis >= axis_limit) continue;
            // skip torus wrap edges; the path lives on the growing quadrant
            if (g.coords(ed.head)[ed.axis] != c[ed.axis] + 1) continue;
            if (env.omega[inc.edge] > best ||
                (env.omega[inc.edge] == best && ed.axis < best_axis)) {
                best = env.omega[inc.edge];
                best_axis = ed.axis;
                best_edge = inc.edge;
            }
        }
        if (best_edge < 0)
            throw std::runtime_error(
                "greedy path exits the graph at step " + std::to_string(n) +
                "; extents must exceed the path length");
        conductances.push_back(env.omega[best_edge]);
        ++c[best_axis];
    }
    return finish_report(std::move(conductances));
}

GreedyPathScaling greedy_path_layered(
    const LayeredSpec& spec, int d, GreedyVariant variant,
    const std::vector<std::int64_t>& checkpoints) {
    if (d < 2) throw std::invalid_argument("layered greedy path needs d >= 2");
    if (checkpoints.empty() ||
        !std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("checkpoints must be ascending and nonempty");

    const std::int64_t total = checkpoints.back() + 1;  // sum_{n=0}^{L} has L+1 terms
    std::vector<std::int64_t> x(d, 0);
    std::vector<std::int64_t> transverse(d - 1);
    std::vector<double> conductances;
    conductances.reserve(total);

    GreedyPathScaling scaling;
    scaling.lengths = checkpoints;
    double sum = 0.0;
    std::size_t next_cp = 0;

    for (std::int64_t n = 0; n < total; ++n) {
        const int axis_limit =
            (n == 0 && variant == GreedyVariant::first_step_restricted) ? d - 1 : d;
        int best_axis = 0;
        double best = -1.0;
        for (int i = 0; i < axis_limit; ++i) {
            int k = 0;
            for (int j = 0; j < d; ++j)
                if (j != i) transverse[k++] = x[j];
            const double w = layered_line_value(spec, i, transverse);
            if (w > best) {
                best = w;
                best_axis = i;
            }
        }
        conductances.push_back(best);
        sum += 1.0 / std::sqrt(best);
        ++x[best_axis];
        while (next_cp < checkpoints.size() && n == checkpoints[next_cp]) {
            scaling.sums.push_back(sum);
            ++next_cp;
        }
    }
    scaling.full = finish_report(std::move(conductances));
    return scaling;
}

PathSumCheck path_sum_check(const GreedyPathScaling& scaling, double alpha,
                            int d) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    PathSumCheck check;
    check.sum = scaling.sums.back();
    check.bound_exponent = 1.0 - (d - 1) / (2.0 * alpha);

    // least-squares slope of log sum vs log L
    const std::size_t n = scaling.lengths.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(static_cast<double>(scaling.lengths[i]));
        const double ly = std::log(scaling.sums[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    check.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return check;
}

std::int32_t box_argmax_edge(const Environment& env, int L) {
    const auto& g = *env.graph;
    const int d = g.dimension();
    std::vector<int> center(d), lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        if (g.extents()[i] < 2 * L + 1)
            throw std::invalid_argument("box too small for window radius " +
                                        std::to_string(L));
        center[i] = g.extents()[i] / 2;
        lo[i] = center[i] - L;
        hi[i] = center[i] + L;
    }
    std::int32_t best_edge = -1;
    double best = -1.0;
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto c = g.coords(g.edge(static_cast<std::int32_t>(e)).head);
        bool inside = true;
        for (int i = 0; i < d; ++i)
            if (c[i] < lo[i] || c[i] > hi[i]) inside = false;
        if (inside && env.omega[e] > best) {
            best = env.omega[e];
            best_edge = static_cast<std::int32_t>(e);
        }
    }
    return best_edge;
}

}  // namespace rcm
