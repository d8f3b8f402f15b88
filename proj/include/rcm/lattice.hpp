#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rcm {

enum class Boundary { box, torus };

// Oriented edge of the lattice. The orientation is fixed at construction:
// tail is e+ (lexicographically smaller coordinates), head is e-.
struct Edge {
    std::int32_t tail;
    std::int32_t head;
    std::int8_t axis;
};

struct Incidence {
    std::int32_t neighbor;
    std::int32_t edge;
};

struct GraphConstants {
    double c_deg = 1.0;
    double c_reg = 1.0;
    double c_s1 = 1.0;
    int d = 2;
    int d_prime = 2;
    int n1 = 1;  // radius thresholds; existential in theory, user-set here
    int n2 = 1;
};

struct VolumeRegularityRatio {
    double ball_over_nd;
    double nd_over_ball;
    bool clipped;
};

// Finite box or torus quotient of Z^d. Immutable after construction; vertices
// are indexed row-major by coordinates.
class LatticeGraph {
public:
    static LatticeGraph build(int d, const std::vector<int>& extents,
                              Boundary boundary);

    int dimension() const { return d_; }
    Boundary boundary() const { return boundary_; }
    const std::vector<int>& extents() const { return extents_; }
    std::int64_t vertex_count() const { return n_vertices_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    int degree_bound() const { return 2 * d_; }

    const Edge& edge(std::int32_t e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const Incidence> neighbors(std::int32_t v) const {
        return {incidence_.data() + offsets_[v],
                static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
    }
    int degree(std::int32_t v) const { return offsets_[v + 1] - offsets_[v]; }

    std::vector<int> coords(std::int32_t v) const;
    std::int32_t vertex_at(const std::vector<int>& coords) const;
    std::int32_t center_vertex() const;

    // BFS distance field from x over edges.
    std::vector<int> graph_distance_field(std::int32_t x) const;
    int graph_distance(std::int32_t x, std::int32_t y) const;

    // Closed ball {y : d(x,y) <= r}.
    std::vector<std::int32_t> ball(std::int32_t x, int r) const;

    // (|B(x,n)|/n^d, n^d/|B(x,n)|) plus a flag when the ball is clipped by the
    // box boundary or wraps around the torus.
    VolumeRegularityRatio volume_regularity_ratio(std::int32_t x, int n) const;

    // LHS of the local Sobolev inequality divided by
    // n^{1-d/d'} * sum_{edges meeting B(x,n)} |grad u|.
    double sobolev_ratio(const std::vector<double>& u, std::int32_t x, int n,
                         int d_prime) const;

    bool ball_clipped(std::int32_t x, int n) const;

private:
    int d_ = 0;
    std::vector<int> extents_;
    Boundary boundary_ = Boundary::box;
    std::int64_t n_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::int32_t> offsets_;
    std::vector<Incidence> incidence_;
    std::vector<std::int64_t> strides_;
};

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

}  // namespace rcm
