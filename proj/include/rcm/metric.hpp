#pragma once

#include <cstdint>
#include <vector>

#include "rcm/calculus.hpp"
#include "rcm/environment.hpp"

namespace rcm {

struct MetricField {
    std::int32_t source = 0;
    std::vector<double> dist;

    double operator()(std::int32_t y) const { return dist[y]; }
};

// (1 ^ (theta(e+) ^ theta(e-)) / omega(e))^{1/2}, always in (0,1].
double chemical_edge_weight(const Environment& env, const SpeedMeasure& theta,
                            std::int32_t e);

// Single-source shortest path with the chemical weights (Dijkstra).
MetricField intrinsic_distance_field(const Environment& env,
                                     const SpeedMeasure& theta,
                                     std::int32_t x);

struct FeasibilityViolation {
    std::int32_t edge;
    double gradient_excess;  // |grad psi| - 1, clamped at 0
    double energy_excess;    // dGamma(psi,psi) - theta^ ^ theta^-, clamped
};

struct FeasibilityReport {
    bool feasible;
    std::vector<FeasibilityViolation> worst_edges;
};

// Checks the two constraints of the variational characterisation:
// |grad psi| <= 1 and dGamma(psi,psi)(e) <= theta(e+) ^ theta(e-).
FeasibilityReport certify_feasible(const Environment& env,
                                   const SpeedMeasure& theta,
                                   const VertexField& psi, double tol = 1e-12);

// d(x,y) - (psi*(y) - psi*(x)) with psi* = d(x, .); zero up to float noise.
double duality_gap(const Environment& env, const SpeedMeasure& theta,
                   std::int32_t x, std::int32_t y);

struct LowerBoundRow {
    int radius;
    double min_intrinsic;  // min over y at graph distance exactly r
    double ratio;          // min_intrinsic / r^{1-(d-1)/(2p)}
};

struct LowerBoundReport {
    double p;
    double exponent;  // 1 - (d-1)/(2p)
    double m_p;       // m_p statistic at the largest radius
    double c_hat;     // min ratio over the radii
    std::vector<LowerBoundRow> rows;
};

LowerBoundReport lower_bound_report(const Environment& env,
                                    const SpeedMeasure& theta, std::int32_t x,
                                    double p, const std::vector<int>& radii);

struct RecordStats {
    std::vector<double> running_max;   // M_n
    std::vector<std::int64_t> record_times;  // l_k, l_0 = 0
    std::int64_t record_count;         // N over the whole sequence
};

RecordStats record_stats(const std::vector<double>& values);

enum class GreedyVariant { first_step_restricted, unrestricted };

struct GreedyPathReport {
    std::vector<double> edge_conductances;  // along the path, length L+1
    std::vector<double> running_max;
    std::vector<std::int64_t> record_times;
    std::int64_t record_count;
    double inv_sqrt_sum;  // sum of omega^{-1/2} along the path
};

// Axis-argmax path on a finite environment; errors if it exits the graph.
GreedyPathReport greedy_path(const Environment& env, std::int32_t x0,
                             std::int64_t steps, GreedyVariant variant);

// Same path on the unbounded quadrant of the layered environment, evaluated
// lazily through the addressable line draws. checkpoints must be ascending;
// partial inv-sqrt sums are reported at each checkpoint.
struct GreedyPathScaling {
    std::vector<std::int64_t> lengths;
    std::vector<double> sums;
    GreedyPathReport full;
};

GreedyPathScaling greedy_path_layered(const LayeredSpec& spec, int d,
                                      GreedyVariant variant,
                                      const std::vector<std::int64_t>& checkpoints);

struct PathSumCheck {
    double sum;
    double bound_exponent;  // 1 - (d-1)/(2 alpha)
    double loglog_slope;
};

PathSumCheck path_sum_check(const GreedyPathScaling& scaling, double alpha,
                            int d);

// argmax_{e : e- in the centered window of radius L} omega(e), ties by index.
std::int32_t box_argmax_edge(const Environment& env, int L);

}  // namespace rcm
