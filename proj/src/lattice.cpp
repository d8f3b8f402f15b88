#include "rcm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace rcm {

std::string to_string(Boundary b) {
    return b == Boundary::box ? "box" : "torus";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "box") return Boundary::box;
    if (s == "torus") return Boundary::torus;
    throw std::invalid_argument("unknown boundary mode: " + s);
}

LatticeGraph LatticeGraph::build(int d, const std::vector<int>& extents,
                                 Boundary boundary) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (static_cast<int>(extents.size()) != d)
        throw std::invalid_argument("extents size does not match dimension");
    for (int i = 0; i < d; ++i) {
        if (extents[i] < 2)
            throw std::invalid_argument("extent on axis " + std::to_string(i) +
                                        " must be >= 2");
        if (boundary == Boundary::torus && extents[i] < 3)
            throw std::invalid_argument("torus extent on axis " +
                                        std::to_string(i) +
                                        " must be >= 3 to avoid duplicate edges");
    }

    LatticeGraph g;
    g.d_ = d;
    g.extents_ = extents;
    g.boundary_ = boundary;

    // row-major strides: last axis is fastest
    g.strides_.assign(d, 1);
    for (int i = d - 2; i >= 0; --i)
        g.strides_[i] = g.strides_[i + 1] * extents[i + 1];
    g.n_vertices_ = g.strides_[0] * extents[0];
    if (g.n_vertices_ > (std::int64_t(1) << 31) - 1)
        throw std::invalid_argument("lattice too large for 32-bit vertex ids");

    const auto n = static_cast<std::int32_t>(g.n_vertices_);
    std::vector<int> c(d, 0);
    for (std::int32_t v = 0; v < n; ++v) {
        for (int i = 0; i < d; ++i) {
            if (c[i] + 1 < extents[i]) {
                const auto w = static_cast<std::int32_t>(v + g.strides_[i]);
                g.edges_.push_back({v, w, static_cast<std::int8_t>(i)});
            } else if (boundary == Boundary::torus) {
                // wrap edge; e+ is the endpoint with the smaller coordinates
                const auto w =
                    static_cast<std::int32_t>(v - g.strides_[i] * (extents[i] - 1));
                g.edges_.push_back({w, v, static_cast<std::int8_t>(i)});
            }
        }
        // advance coordinates
        for (int i = d - 1; i >= 0; --i) {
            if (++c[i] < extents[i]) break;
            c[i] = 0;
        }
    }

    // incidence lists
    std::vector<std::int32_t> deg(n, 0);
    for (const auto& e : g.edges_) {
        ++deg[e.tail];
        ++deg[e.head];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::int32_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.incidence_.resize(g.offsets_[n]);
    std::vector<std::int32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::int32_t e = 0; e < static_cast<std::int32_t>(g.edges_.size()); ++e) {
        const auto& ed = g.edges_[e];
        g.incidence_[fill[ed.tail]++] = {ed.head, e};
        g.incidence_[fill[ed.head]++] = {ed.tail, e};
    }
    return g;
}

std::vector<int> LatticeGraph::coords(std::int32_t v) const {
    std::vector<int> c(d_);
    std::int64_t rest = v;
    for (int i = 0; i < d_; ++i) {
        c[i] = static_cast<int>(rest / strides_[i]);
        rest %= strides_[i];
    }
    return c;
}

std::int32_t LatticeGraph::vertex_at(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) != d_)
        throw std::invalid_argument("coordinate arity mismatch");
    std::int64_t v = 0;
    for (int i = 0; i < d_; ++i) {
        if (c[i] < 0 || c[i] >= extents_[i])
            throw std::out_of_range("coordinate out of range on axis " +
                                    std::to_string(i));
        v += static_cast<std::int64_t>(c[i]) * strides_[i];
    }
    return static_cast<std::int32_t>(v);
}

std::int32_t LatticeGraph::center_vertex() const {
    std::vector<int> c(d_);
    for (int i = 0; i < d_; ++i) c[i] = extents_[i] / 2;
    return vertex_at(c);
}

std::vector<int> LatticeGraph::graph_distance_field(std::int32_t x) const {
    if (x < 0 || x >= n_vertices_) throw std::out_of_range("vertex out of range");
    std::vector<int> dist(n_vertices_, -1);
    std::deque<std::int32_t> queue{x};
    dist[x] = 0;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto& inc : neighbors(v)) {
            if (dist[inc.neighbor] < 0) {
                dist[inc.neighbor] = dist[v] + 1;
                queue.push_back(inc.neighbor);
            }
        }
    }
    return dist;
}

int LatticeGraph::graph_distance(std::int32_t x, std::int32_t y) const {
    if (y < 0 || y >= n_vertices_) throw std::out_of_range("vertex out of range");
    if (x == y) return 0;
    return graph_distance_field(x)[y];
}

std::vector<std::int32_t> LatticeGraph::ball(std::int32_t x, int r) const {
    if (r < 0) throw std::invalid_argument("radius must be >= 0");
    if (x < 0 || x >= n_vertices_) throw std::out_of_range("vertex out of range");
    std::vector<int> dist(n_vertices_, -1);
    std::vector<std::int32_t> members{x};
    std::deque<std::int32_t> queue{x};
    dist[x] = 0;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        if (dist[v] == r) continue;
        for (const auto& inc : neighbors(v)) {
            if (dist[inc.neighbor] < 0) {
                dist[inc.neighbor] = dist[v] + 1;
                members.push_back(inc.neighbor);
                queue.push_back(inc.neighbor);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool LatticeGraph::ball_clipped(std::int32_t x, int n) const {
    const auto c = coords(x);
    for (int i = 0; i < d_; ++i) {
        if (boundary_ == Boundary::box) {
            if (c[i] - n < 0 || c[i] + n >= extents_[i]) return true;
        } else {
            // wrapped ball differs from the infinite-lattice ball once the
            // two arms meet
            if (2 * n >= extents_[i]) return true;
        }
    }
    return false;
}

VolumeRegularityRatio LatticeGraph::volume_regularity_ratio(std::int32_t x,
                                                            int n) const {
    if (n < 1) throw std::invalid_argument("radius must be >= 1");
    const double vol = static_cast<double>(ball(x, n).size());
    const double nd = std::pow(static_cast<double>(n), d_);
    return {vol / nd, nd / vol, ball_clipped(x, n)};
}

double LatticeGraph::sobolev_ratio(const std::vector<double>& u, std::int32_t x,
                                   int n, int d_prime) const {
    if (static_cast<std::int64_t>(u.size()) != n_vertices_)
        throw std::invalid_argument("function not defined on all vertices");
    if (d_prime < 2) throw std::invalid_argument("d' must be >= 2");
    const auto b = ball(x, n);
    std::vector<char> in_ball(n_vertices_, 0);
    for (auto v : b) in_ball[v] = 1;
    bool all_zero = true;
    for (std::int32_t v = 0; v < n_vertices_; ++v) {
        if (u[v] != 0.0) {
            all_zero = false;
            if (!in_ball[v])
                throw std::invalid_argument("support of u exceeds B(x,n)");
        }
    }
    if (all_zero) throw std::invalid_argument("u is identically zero");

    const double expo = static_cast<double>(d_prime) / (d_prime - 1);
    double lhs = 0.0;
    for (auto v : b) lhs += std::pow(std::abs(u[v]), expo);
    lhs = std::pow(lhs, 1.0 / expo);

    double edge_sum = 0.0;
    for (const auto& e : edges_) {
        if (in_ball[e.tail] || in_ball[e.head])
            edge_sum += std::abs(u[e.tail] - u[e.head]);
    }
    const double scale =
        std::pow(static_cast<double>(n),
                 1.0 - static_cast<double>(d_) / d_prime);
    return lhs / (scale * edge_sum);
}

}  // namespace rcm
