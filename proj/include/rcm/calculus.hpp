#pragma once

#include <vector>

#include "rcm/environment.hpp"
#include "rcm/lattice.hpp"

namespace rcm {

using VertexField = std::vector<double>;
using EdgeField = std::vector<double>;

// grad f(e) = f(e+) - f(e-).
EdgeField gradient(const LatticeGraph& g, const VertexField& f);

// Adjoint with counting measure on both sides:
// <grad f, F>_E = <f, div* F>_V for all f.
VertexField adjoint(const LatticeGraph& g, const EdgeField& F);

// dGamma(f,g) = omega * grad f * grad g, edgewise.
EdgeField carre_du_champ(const Environment& env, const VertexField& f,
                         const VertexField& g);

// E(f,g) = <grad f, omega grad g>_E.
double dirichlet_form(const Environment& env, const VertexField& f,
                      const VertexField& g);

// (L f)(x) = theta(x)^{-1} sum_{y~x} omega(x,y) (f(y) - f(x)).
VertexField generator_apply(const Environment& env, const SpeedMeasure& theta,
                            const VertexField& f);

// (L_phi g)(x) = phi(x) (L phi^{-1} g)(x).
VertexField tilted_generator_apply(const Environment& env,
                                   const SpeedMeasure& theta,
                                   const VertexField& phi,
                                   const VertexField& g);

// h(phi) = max_x 1/(2 theta(x)) sum_{y~x} |dGamma(phi, phi^{-1})({x,y})|.
double davies_tilt_h(const Environment& env, const SpeedMeasure& theta,
                     const VertexField& phi);

// Space-averaged weighted l^p norm over B; p = inf takes max|f| and ignores
// the weight.
double weighted_norm(const VertexField& f, double p,
                     const std::vector<std::int32_t>& ball,
                     const VertexField* phi = nullptr);

// Space-time-averaged norm of u sampled on a time grid; trapezoid rule in t,
// p_prime = inf takes the grid supremum.
double spacetime_norm(const std::vector<double>& times,
                      const std::vector<VertexField>& u, double p,
                      double p_prime, double t_lo, double t_hi,
                      const std::vector<std::int32_t>& ball,
                      const VertexField& theta);

struct NormSpec {
    double p;
    double q;
    double r;
    int d_prime;
};

struct CondPqr {
    bool holds;
    double lhs;
    double rhs;
};

// 1/r + (1/p)(r-1)/r + 1/q < 2/d', with 1/inf := 0.
CondPqr cond_pqr(const NormSpec& spec);

struct AssumptionReport {
    double factor_mu_theta;   // ||1 v mu/theta||_{p,B,theta}
    double factor_nu;         // ||1 v nu||_{q,B}
    double factor_theta;      // ||1 v theta||_{r,B}
    double factor_inv_theta;  // ||1 v 1/theta||_{q,B}
    double product;
    double c_int;
    int radius;
    std::int32_t center;
    bool pass;
    bool clipped;
};

AssumptionReport integrability_product(const Environment& env,
                                       const SpeedMeasure& theta,
                                       std::int32_t x, int n,
                                       const NormSpec& spec, double c_int);

// Finite-n proxy for m_p: ||1 v mu/theta||_{p,B(x,n)} with the unweighted
// average.
double m_p_statistic(const Environment& env, const SpeedMeasure& theta,
                     std::int32_t x, int n, double p);

}  // namespace rcm
