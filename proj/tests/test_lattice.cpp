#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rcm/lattice.hpp"

using namespace rcm;

TEST_CASE("vertex and edge counts") {
    const auto box33 = LatticeGraph::build(2, {3, 3}, Boundary::box);
    CHECK(box33.vertex_count() == 9);
    CHECK(box33.edge_count() == 12);

    const auto line = LatticeGraph::build(1, {2}, Boundary::box);
    CHECK(line.vertex_count() == 2);
    CHECK(line.edge_count() == 1);

    const auto torus44 = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    CHECK(torus44.vertex_count() == 16);
    CHECK(torus44.edge_count() == 32);
    for (std::int32_t v = 0; v < 16; ++v) CHECK(torus44.degree(v) == 4);
}

TEST_CASE("invalid extents rejected") {
    CHECK_THROWS(LatticeGraph::build(0, {}, Boundary::box));
    CHECK_THROWS(LatticeGraph::build(2, {3, 1}, Boundary::box));
    CHECK_THROWS(LatticeGraph::build(2, {3, 2}, Boundary::torus));
}

TEST_CASE("graph distance") {
    const auto g = LatticeGraph::build(2, {9, 9}, Boundary::box);
    const auto a = g.vertex_at({0, 0});
    const auto b = g.vertex_at({3, 4});
    CHECK(g.graph_distance(a, b) == 7);
    CHECK(g.graph_distance(b, a) == 7);
    CHECK(g.graph_distance(a, a) == 0);

    const auto t = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    CHECK(t.graph_distance(t.vertex_at({0, 0}), t.vertex_at({3, 0})) == 1);
}

TEST_CASE("graph distance satisfies the metric axioms on a small torus") {
    const auto g = LatticeGraph::build(2, {4, 4}, Boundary::torus);
    const auto n = g.vertex_count();
    std::vector<std::vector<int>> dist;
    for (std::int32_t x = 0; x < n; ++x) dist.push_back(g.graph_distance_field(x));
    for (std::int32_t x = 0; x < n; ++x)
        for (std::int32_t y = 0; y < n; ++y) {
            CHECK(dist[x][y] == dist[y][x]);
            CHECK((dist[x][y] == 0) == (x == y));
            for (std::int32_t z = 0; z < n; ++z)
                CHECK(dist[x][y] <= dist[x][z] + dist[z][y]);
        }
}

TEST_CASE("balls") {
    const auto g = LatticeGraph::build(2, {41, 41}, Boundary::box);
    const auto x = g.center_vertex();
    CHECK(g.ball(x, 0) == std::vector<std::int32_t>{x});
    CHECK(g.ball(x, 1).size() == 5);
    for (int n = 1; n <= 10; ++n)
        CHECK(g.ball(x, n).size() == static_cast<std::size_t>(2 * n * n + 2 * n + 1));

    // ball is exactly the sublevel set of the distance field
    const auto field = g.graph_distance_field(x);
    for (int r : {0, 3, 7}) {
        std::size_t count = 0;
        for (std::int64_t y = 0; y < g.vertex_count(); ++y)
            if (field[y] <= r) ++count;
        CHECK(g.ball(x, r).size() == count);
    }
}

TEST_CASE("ball volume is polynomial of degree d in the interior") {
    for (int d : {1, 2, 3}) {
        std::vector<int> ext(d, 25);
        const auto g = LatticeGraph::build(d, ext, Boundary::box);
        const auto x = g.center_vertex();
        // d+1 ball sizes determine the polynomial; check a further radius
        std::vector<double> sizes;
        for (int n = 1; n <= d + 2; ++n)
            sizes.push_back(static_cast<double>(g.ball(x, n).size()));
        // finite differences of order d+1 of a degree-d polynomial vanish
        std::vector<double> diff = sizes;
        for (int k = 0; k <= d; ++k)
            for (std::size_t i = 0; i + 1 < diff.size(); ++i)
                diff[i] = diff[i + 1] - diff[i];
        CHECK(diff[0] == doctest::Approx(0.0));
    }
}

TEST_CASE("volume regularity ratio") {
    const auto g = LatticeGraph::build(2, {41, 41}, Boundary::box);
    const auto x = g.center_vertex();
    const auto r10 = g.volume_regularity_ratio(x, 10);
    CHECK(r10.ball_over_nd == doctest::Approx(2.21));
    CHECK(r10.nd_over_ball == doctest::Approx(100.0 / 221.0));
    CHECK_FALSE(r10.clipped);

    const auto r1 = g.volume_regularity_ratio(x, 1);
    CHECK(r1.ball_over_nd == doctest::Approx(5.0));
    CHECK(r1.nd_over_ball == doctest::Approx(0.2));

    CHECK(g.volume_regularity_ratio(g.vertex_at({0, 0}), 3).clipped);
}

TEST_CASE("sobolev ratio") {
    const auto g = LatticeGraph::build(2, {11, 11}, Boundary::box);
    const auto x = g.center_vertex();

    std::vector<double> u(g.vertex_count(), 0.0);
    u[x] = 1.0;
    CHECK(g.sobolev_ratio(u, x, 2, 2) == doctest::Approx(0.25));
    // 1-homogeneous in u
    for (auto& v : u) v *= 7.5;
    CHECK(g.sobolev_ratio(u, x, 2, 2) == doctest::Approx(0.25));

    // indicator of B(x,1): LHS = sqrt(5); each of the 4 outer vertices has 3
    // edges leaving the ball, so the gradient sum is 12
    std::vector<double> w(g.vertex_count(), 0.0);
    for (auto y : g.ball(x, 1)) w[y] = 1.0;
    CHECK(g.sobolev_ratio(w, x, 2, 2) == doctest::Approx(std::sqrt(5.0) / 12.0));

    std::vector<double> zero(g.vertex_count(), 0.0);
    CHECK_THROWS(g.sobolev_ratio(zero, x, 2, 2));
    std::vector<double> outside(g.vertex_count(), 0.0);
    outside[g.vertex_at({0, 0})] = 1.0;
    CHECK_THROWS(g.sobolev_ratio(outside, x, 2, 2));
}

TEST_CASE("sobolev ratio is translation invariant in the interior") {
    const auto g = LatticeGraph::build(2, {15, 15}, Boundary::box);
    double ref = -1.0;
    for (int cx : {5, 6, 9}) {
        const auto x = g.vertex_at({cx, 7});
        std::vector<double> u(g.vertex_count(), 0.0);
        for (auto y : g.ball(x, 1)) u[y] = 2.0;
        u[x] = 3.0;
        const double r = g.sobolev_ratio(u, x, 2, 2);
        if (ref < 0) ref = r;
        CHECK(r == doctest::Approx(ref));
    }
}
