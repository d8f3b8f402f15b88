#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rcm/calculus.hpp"
#include "rcm/environment.hpp"

using namespace rcm;

namespace {

VertexField random_field(const LatticeGraph& g, std::mt19937_64& rng,
                         double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    VertexField f(g.vertex_count());
    for (auto& v : f) v = u(rng);
    return f;
}

double inner_v(const VertexField& a, const VertexField& b,
               const VertexField* w = nullptr) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i] * (w ? (*w)[i] : 1.0);
    return s;
}

}  // namespace

TEST_CASE("gradient basics and product rule") {
    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::box);
    const VertexField ones(g.vertex_count(), 3.0);
    for (double v : gradient(g, ones)) CHECK(v == 0.0);

    std::mt19937_64 rng(1);
    const auto f = random_field(g, rng);
    const auto h = random_field(g, rng);
    VertexField fh(g.vertex_count());
    for (std::size_t i = 0; i < fh.size(); ++i) fh[i] = f[i] * h[i];
    const auto gf = gradient(g, f);
    const auto gh = gradient(g, h);
    const auto gfh = gradient(g, fh);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        const double avg_f = 0.5 * (f[ed.tail] + f[ed.head]);
        const double avg_h = 0.5 * (h[ed.tail] + h[ed.head]);
        CHECK(gfh[e] == doctest::Approx(avg_f * gh[e] + avg_h * gf[e]).epsilon(1e-12));
    }
}

TEST_CASE("adjoint duality") {
    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::box);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_field(g, rng);
        EdgeField F(g.edge_count());
        for (auto& v : F) v = u(rng);
        const auto gf = gradient(g, f);
        double lhs = 0.0;
        for (std::int64_t e = 0; e < g.edge_count(); ++e) lhs += gf[e] * F[e];
        const double rhs = inner_v(f, adjoint(g, F));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("carre du champ") {
    const auto g = LatticeGraph::build(2, {5, 5}, Boundary::box);
    const auto env = gen_iid(g, {IidDist::Kind::pareto, 2.0, 1.0}, 4);
    std::mt19937_64 rng(3);
    const auto f = random_field(g, rng);
    for (double v : carre_du_champ(env, f, f)) CHECK(v >= 0.0);

    // dGamma(phi, 1/phi) <= 0 for positive phi
    const auto psi = random_field(g, rng);
    VertexField phi(g.vertex_count()), inv(g.vertex_count());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        phi[i] = std::exp(psi[i]);
        inv[i] = 1.0 / phi[i];
    }
    for (double v : carre_du_champ(env, phi, inv)) CHECK(v <= 0.0);
}

TEST_CASE("dirichlet form") {
    const auto g = LatticeGraph::build(2, {5, 5}, Boundary::box);
    const auto env = gen_iid(g, {IidDist::Kind::uniform, 0.5, 2.0}, 5);
    const auto m = mu(env);
    VertexField ind(g.vertex_count(), 0.0);
    ind[7] = 1.0;
    CHECK(dirichlet_form(env, ind, ind) == doctest::Approx(m[7]).epsilon(1e-12));

    const VertexField ones(g.vertex_count(), 4.0);
    CHECK(dirichlet_form(env, ones, ones) == doctest::Approx(0.0));

    std::mt19937_64 rng(6);
    const auto f = random_field(g, rng);
    const auto h = random_field(g, rng);
    CHECK(dirichlet_form(env, f, h) ==
          doctest::Approx(dirichlet_form(env, h, f)).epsilon(1e-12));
}

TEST_CASE("generator") {
    const auto line = LatticeGraph::build(1, {2}, Boundary::box);
    const auto env1 = gen_constant(line, 1.0);
    const auto th1 = speed_measure(env1, SpeedKind::vsrw);
    const auto lf = generator_apply(env1, th1, {0.0, 1.0});
    CHECK(lf[0] == doctest::Approx(1.0));
    CHECK(lf[1] == doctest::Approx(-1.0));

    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::pareto, 2.0, 1.0}, 7);
    const auto theta = speed_measure(env, SpeedKind::csrw);
    const VertexField ones(g.vertex_count(), 2.0);
    for (double v : generator_apply(env, theta, ones)) CHECK(v == doctest::Approx(0.0));

    // self-adjoint in l2(V, theta): <f, -Lg>_theta = E(f, g)
    std::mt19937_64 rng(8);
    const auto f = random_field(g, rng);
    const auto h = random_field(g, rng);
    const auto lh = generator_apply(env, theta, h);
    double lhs = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) lhs -= f[i] * lh[i] * theta.theta[i];
    CHECK(lhs == doctest::Approx(dirichlet_form(env, f, h)).epsilon(1e-12));
}

TEST_CASE("tilted generator") {
    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::uniform, 0.5, 1.5}, 9);
    const auto theta = speed_measure(env, SpeedKind::vsrw);
    std::mt19937_64 rng(10);
    const auto h = random_field(g, rng);
    VertexField phi(g.vertex_count(), 1.0);

    const auto plain = generator_apply(env, theta, h);
    const auto tilted = tilted_generator_apply(env, theta, phi, h);
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK(tilted[i] == doctest::Approx(plain[i]).epsilon(1e-12));

    const auto psi = random_field(g, rng);
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::exp(psi[i]);
    for (double v : tilted_generator_apply(env, theta, phi, phi))
        CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("davies tilt h") {
    const auto g = LatticeGraph::build(2, {6, 6}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::uniform, 0.5, 1.0}, 11);
    const auto theta = speed_measure(env, SpeedKind::vsrw);

    const VertexField ones(g.vertex_count(), 1.0);
    CHECK(davies_tilt_h(env, theta, ones) == doctest::Approx(0.0));

    // for phi = e^psi, h = max_x sum (omega/theta)(cosh(grad psi) - 1)
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    VertexField psi(g.vertex_count()), phi(g.vertex_count());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        psi[i] = u(rng);
        phi[i] = std::exp(psi[i]);
    }
    const auto gpsi = gradient(g, psi);
    VertexField acc(g.vertex_count(), 0.0);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        const double term = env.omega[e] * (std::cosh(gpsi[e]) - 1.0);
        acc[ed.tail] += term;
        acc[ed.head] += term;
    }
    double expect = 0.0;
    for (std::size_t x = 0; x < acc.size(); ++x)
        expect = std::max(expect, acc[x] / theta.theta[x]);
    CHECK(davies_tilt_h(env, theta, phi) == doctest::Approx(expect).epsilon(1e-12));

    // with omega <= 1, theta = 1 and |grad psi| <= lambda, h <= 2d(cosh l - 1)
    const double lambda = 1.6;  // psi in [-0.8, 0.8] so gradients stay in range
    CHECK(davies_tilt_h(env, theta, phi) <= 4.0 * (std::cosh(lambda) - 1.0));
}

TEST_CASE("weighted norms") {
    const auto g = LatticeGraph::build(2, {2, 2}, Boundary::box);
    const std::vector<std::int32_t> B{0, 1, 2, 3};
    const VertexField c(4, -2.5);
    for (double p : {1.0, 2.0, 7.0})
        CHECK(weighted_norm(c, p, B) == doctest::Approx(2.5));

    const VertexField f{1.0, 0.0, 0.0, 0.0};
    CHECK(weighted_norm(f, 2.0, B) == doctest::Approx(0.5));

    const VertexField w{10.0, 1.0, 1.0, 1.0};
    CHECK(weighted_norm(f, std::numeric_limits<double>::infinity(), B, &w) ==
          doctest::Approx(1.0));  // p = inf ignores the weight
}

TEST_CASE("spacetime norm") {
    const auto g = LatticeGraph::build(2, {2, 2}, Boundary::box);
    const std::vector<std::int32_t> B{0, 1, 2, 3};
    const VertexField theta(4, 1.0);

    std::vector<double> times;
    std::vector<VertexField> u;
    for (int i = 0; i <= 100; ++i) {
        times.push_back(i / 100.0);
        u.emplace_back(4, times.back());
    }
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(spacetime_norm(times, u, 1.0, 1.0, 0.0, 1.0, B, theta) ==
          doctest::Approx(0.5).epsilon(1e-3));
    CHECK(spacetime_norm(times, u, 1.0, inf, 0.0, 1.0, B, theta) ==
          doctest::Approx(1.0));
    CHECK(spacetime_norm(times, u, 1.0, inf, 0.0, 1.0, B, theta) >=
          spacetime_norm(times, u, 1.0, 1.0, 0.0, 1.0, B, theta));
}

TEST_CASE("exponent condition") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto all_inf = cond_pqr({inf, inf, inf, 2});
    CHECK(all_inf.holds);
    CHECK(all_inf.lhs == doctest::Approx(0.0));
    CHECK(all_inf.rhs == doctest::Approx(1.0));

    const auto tens = cond_pqr({10, 10, 10, 2});
    CHECK(tens.holds);
    CHECK(tens.lhs == doctest::Approx(0.29));

    const auto fours = cond_pqr({4, 4, 4, 4});
    CHECK_FALSE(fours.holds);
    CHECK(fours.lhs == doctest::Approx(0.6875));
    CHECK(fours.rhs == doctest::Approx(0.5));
}

TEST_CASE("integrability product") {
    const auto g = LatticeGraph::build(2, {33, 33}, Boundary::box);
    const auto env = gen_constant(g, 1.0);
    const auto x = g.center_vertex();

    const auto vsrw = speed_measure(env, SpeedKind::vsrw);
    const auto rep = integrability_product(env, vsrw, x, 8, {2, 2, 2, 2}, 16.0);
    CHECK(rep.factor_mu_theta == doctest::Approx(4.0));
    CHECK(rep.factor_nu == doctest::Approx(4.0));
    CHECK(rep.factor_theta == doctest::Approx(1.0));
    CHECK(rep.factor_inv_theta == doctest::Approx(1.0));
    CHECK(rep.product == doctest::Approx(16.0));
    CHECK(rep.pass);
    CHECK_FALSE(rep.clipped);

    const auto csrw = speed_measure(env, SpeedKind::csrw);  // theta = 4
    const double p = 3.0, r = 5.0;
    const auto rep2 = integrability_product(env, csrw, x, 8, {p, 2, r, 2}, 100.0);
    CHECK(rep2.factor_mu_theta == doctest::Approx(std::pow(4.0, 1.0 / p)));
    CHECK(rep2.factor_nu == doctest::Approx(4.0));
    CHECK(rep2.factor_theta == doctest::Approx(4.0));
    CHECK(rep2.factor_inv_theta == doctest::Approx(1.0));
}

TEST_CASE("m_p statistic") {
    const auto g = LatticeGraph::build(2, {33, 33}, Boundary::box);
    const auto env = gen_constant(g, 1.0);
    const auto x = g.center_vertex();
    CHECK(m_p_statistic(env, speed_measure(env, SpeedKind::vsrw), x, 8, 2.0) ==
          doctest::Approx(4.0));

    const auto env2 = gen_iid(g, {IidDist::Kind::pareto, 4.0, 1.0}, 13);
    CHECK(m_p_statistic(env2, speed_measure(env2, SpeedKind::csrw), x, 8, 2.0) ==
          doctest::Approx(1.0));
}
