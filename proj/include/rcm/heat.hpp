#pragma once

#include <cstdint>
#include <vector>

#include "rcm/calculus.hpp"
#include "rcm/environment.hpp"
#include "rcm/metric.hpp"

namespace rcm {

struct CauchySolution {
    std::vector<double> times;
    std::vector<VertexField> u;       // u(t) = exp(tL) f
    double uniformization_rate;       // Lambda = max mu/theta
    std::int64_t truncation_order;    // largest K used
    double truncation_error;          // certified sup-norm bound
};

// Uniformization: u(t) = sum_k e^{-Lt}(Lt)^k/k! P^k f with P = I + L/Lambda.
// Splits long horizons into segments when Lambda*t exceeds 1e3.
CauchySolution solve_cauchy(const Environment& env, const SpeedMeasure& theta,
                            const VertexField& f,
                            const std::vector<double>& times, double tol);

struct HeatKernelField {
    std::int32_t source = 0;
    std::vector<double> times;
    std::vector<VertexField> prob;     // P_x0[X_t = y]
    std::vector<VertexField> density;  // prob / theta(y)
    double uniformization_rate = 0.0;
    std::int64_t truncation_order = 0;
    double truncation_error = 0.0;
};

HeatKernelField heat_kernel_field(const Environment& env,
                                  const SpeedMeasure& theta, std::int32_t x0,
                                  const std::vector<double>& times, double tol);

struct WalkerStats {
    std::int64_t n_walkers = 0;
    std::vector<double> observe_times;
    std::vector<VertexField> frequency;  // per observation time, sums to 1
    std::uint64_t seed = 0;
};

// Event-driven walk: holding rate mu(x)/theta(x), jump law omega/mu.
WalkerStats mc_walk(const Environment& env, const SpeedMeasure& theta,
                    std::int32_t x0, double t_end, std::int64_t n_walkers,
                    std::uint64_t seed, const std::vector<double>& observe_times,
                    int threads = 1);

// F(s) = inf_{l>0} (-l + (cosh l - 1)/s), closed form
// F(s) = (sqrt(1+s^2)-1)/s - log(s + sqrt(1+s^2)).
double carne_F(double s);
double carne_F_numeric(double s);  // golden-section cross-check

struct CarneBounds {
    double value;
    bool small_s_bound_ok;  // s <= 3  =>  F(s) <= -s/20
    bool large_s_bound_ok;  // s >= e  =>  F(s) <= 1 - log(2s)
};

CarneBounds carne_F_bounds(double s);

struct AprioriMargin {
    double t;
    double bound;   // e^{h t} ||phi f||_{2,V,theta}
    double actual;  // ||v_t||_{2,V,theta}
    double margin;  // bound - actual
};

struct AprioriReport {
    double h;
    std::vector<AprioriMargin> margins;
    double truncation_error;
};

// A-priori growth check for the tilted solution v = phi * u.
AprioriReport apriori_check(const Environment& env, const SpeedMeasure& theta,
                            const VertexField& phi, const VertexField& f,
                            const std::vector<double>& times, double tol);

struct EnvelopeParams {
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 0.0;
    double c4 = 0.0;
    double c5 = 8.0;
    double gamma = 0.0;
    int d = 2;
};

enum class EnvelopeRegime { gaussian, poissonian };  // clauses (i) and (ii)

struct EnvelopeValue {
    bool in_regime;
    double value;  // defined only when in_regime
};

EnvelopeValue envelope_value(const EnvelopeParams& params,
                             EnvelopeRegime regime, double t, double d_graph,
                             double d_intrinsic);

struct EnvelopeFitReport {
    EnvelopeParams params;
    EnvelopeRegime regime;
    std::int64_t fit_count = 0;
    std::int64_t test_count = 0;
    std::int64_t test_violations = 0;
    double worst_test_ratio = 0.0;  // max over test of p / envelope
};

// Fits (c2, c3 or c4, gamma) by minimising the max of log p - log envelope on
// the fit half, then verifies envelope >= p on the held-out half. The split
// alternates deterministically over (t,y) sample index. c2 carries a fixed 5%
// headroom applied before the test set is consulted.
EnvelopeFitReport envelope_fit_and_verify(const HeatKernelField& field,
                                          const MetricField& metric,
                                          const LatticeGraph& g,
                                          EnvelopeRegime regime, double c1,
                                          double c5, int d,
                                          double density_floor = 1e-300);

}  // namespace rcm
