#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rcm/environment.hpp"
#include "rcm/rng.hpp"

using namespace rcm;

TEST_CASE("constant environment") {
    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    const auto env = gen_constant(g, 2.5);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) CHECK(env.omega[e] == 2.5);
    CHECK_THROWS(gen_constant(g, 0.0));
}

TEST_CASE("iid generation is reproducible and seed-sensitive") {
    const auto g = LatticeGraph::build(2, {8, 8}, Boundary::box);
    const IidDist dist{IidDist::Kind::pareto, 4.0, 1.0};
    const auto a = gen_iid(g, dist, 1);
    const auto b = gen_iid(g, dist, 1);
    const auto c = gen_iid(g, dist, 2);
    CHECK(a.omega == b.omega);
    CHECK(a.omega != c.omega);
    for (double w : a.omega) CHECK(w >= 1.0);  // pareto(alpha, scale=1)
}

TEST_CASE("pareto draws match tail and mean") {
    const IidDist dist{IidDist::Kind::pareto, 4.0, 1.0};
    const std::int64_t n = 200000;
    double mean = 0.0;
    std::int64_t tail = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = iid_draw(dist, 3, static_cast<std::uint64_t>(i));
        mean += v;
        if (v > 2.0) ++tail;
    }
    mean /= n;
    CHECK(mean == doctest::Approx(4.0 / 3.0).epsilon(0.02));
    CHECK(static_cast<double>(tail) / n ==
          doctest::Approx(std::pow(2.0, -4.0)).epsilon(0.10));
}

TEST_CASE("uniform and lognormal draws") {
    const IidDist uni{IidDist::Kind::uniform, 1.0, 2.0};
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double v = iid_draw(uni, 5, i);
        CHECK(v >= 1.0);
        CHECK(v <= 2.0);
        mean += v;
    }
    CHECK(mean / 100000 == doctest::Approx(1.5).epsilon(0.01));

    const IidDist logn{IidDist::Kind::lognormal, 0.0, 1.0};
    double logmean = 0.0, logsq = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double v = std::log(iid_draw(logn, 6, i));
        logmean += v;
        logsq += v * v;
    }
    logmean /= 100000;
    CHECK(std::abs(logmean) < 0.02);
    CHECK(logsq / 100000 - logmean * logmean == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("layered environment is constant along lines") {
    const auto g = LatticeGraph::build(2, {12, 12}, Boundary::box);
    const LayeredSpec spec{2.0, 99};
    const auto env = gen_layered(g, spec);
    for (std::int64_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(static_cast<std::int32_t>(e));
        const auto c = g.coords(ed.tail);
        std::vector<std::int64_t> transverse;
        for (int j = 0; j < g.dimension(); ++j)
            if (j != ed.axis) transverse.push_back(c[j]);
        CHECK(env.omega[e] == layered_line_value(spec, ed.axis, transverse));
        CHECK(env.omega[e] >= 1.0);
    }
}

TEST_CASE("layered tail follows the Pareto law") {
    const LayeredSpec spec{2.0, 7};
    const std::int64_t n = 200000;
    std::int64_t tail = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (layered_line_value(spec, 0, {i}) > 10.0) ++tail;
    CHECK(static_cast<double>(tail) / n == doctest::Approx(0.01).epsilon(0.10));
}

TEST_CASE("mu and nu") {
    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    const auto env = gen_constant(g, 2.0);
    const auto m = mu(env);
    const auto v = nu(env);
    for (std::int64_t x = 0; x < g.vertex_count(); ++x) {
        CHECK(m[x] == doctest::Approx(8.0));
        CHECK(v[x] == doctest::Approx(2.0));
    }
}

TEST_CASE("speed measures") {
    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    const auto env = gen_iid(g, {IidDist::Kind::pareto, 2.0, 1.0}, 3);
    const auto csrw = speed_measure(env, SpeedKind::csrw);
    const auto vsrw = speed_measure(env, SpeedKind::vsrw);
    const auto m = mu(env);
    for (std::int64_t x = 0; x < g.vertex_count(); ++x) {
        CHECK(csrw.theta[x] == m[x]);
        CHECK(vsrw.theta[x] == 1.0);
    }
    std::vector<double> bad(g.vertex_count(), 1.0);
    bad[0] = 0.0;
    CHECK_THROWS(speed_measure(env, SpeedKind::custom, &bad));
}
