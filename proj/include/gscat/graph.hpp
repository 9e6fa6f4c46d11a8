#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "gscat/errors.hpp"

namespace gscat {

struct weighted_edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

// Immutable weighted undirected graph. Adjacency is kept as sorted neighbor
// lists per vertex (CSR); every operation is a pure read, so instances can be
// shared across workers freely.
class graph {
public:
    graph() = default;

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    std::span<const weighted_edge> edges() const { return edges_; }

    std::span<const int> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::span<const double> neighbor_weights(int v) const {
        return {adj_w_.data() + offsets_[v], adj_w_.data() + offsets_[v + 1]};
    }

    // weighted degree d(v) = sum of incident edge weights
    double degree(int v) const { return degree_[v]; }
    const std::vector<double>& degree_vector() const { return degree_; }
    int neighbor_count(int v) const { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(int u, int v) const;
    double edge_weight(int u, int v) const; // 0 when absent

    friend graph build_graph(int n, std::span<const weighted_edge> edges);

private:
    int n_ = 0;
    std::vector<weighted_edge> edges_;
    std::vector<int> offsets_;
    std::vector<int> adj_;
    std::vector<double> adj_w_;
    std::vector<double> degree_;
};

// Validates and assembles: rejects self-loops, non-positive weights,
// out-of-range endpoints and duplicate undirected edges.
graph build_graph(int n, std::span<const weighted_edge> edges);

// One application of the lazy walk operator (I + A D^{-1}) / 2 in a single
// sparse pass. Columns sum to one, so signal mass is preserved; a vertex of
// zero degree keeps its mass in place.
void apply_lazy_walk(const graph& g, std::span<const double> x, std::span<double> out);
std::vector<double> apply_lazy_walk(const graph& g, std::span<const double> x);

struct component_partition {
    std::vector<int> label; // component id per vertex, ids in discovery order
    int count = 0;
};
component_partition connected_components(const graph& g);
bool is_connected(const graph& g);

// Dense normalized Laplacian I - D^{-1/2} A D^{-1/2}. Diagnostic/test
// surface only; throws isolated_vertex when some degree is zero.
Eigen::MatrixXd normalized_laplacian(const graph& g);

} // namespace gscat
