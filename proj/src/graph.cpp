#include "gscat/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace gscat {

graph build_graph(int n, std::span<const weighted_edge> edges) {
    if (n < 0) throw index_out_of_range("vertex count must be nonnegative");
    graph g;
    g.n_ = n;
    g.edges_.assign(edges.begin(), edges.end());

    std::vector<int> counts(n + 1, 0);
    for (auto& e : g.edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw index_out_of_range("edge (" + std::to_string(e.u) + "," +
                                     std::to_string(e.v) + ") outside [0," +
                                     std::to_string(n) + ")");
        if (e.u == e.v)
            throw self_loop("self loop at vertex " + std::to_string(e.u));
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw non_positive_weight("edge (" + std::to_string(e.u) + "," +
                                      std::to_string(e.v) + ") has weight " +
                                      std::to_string(e.w));
        ++counts[e.u + 1];
        ++counts[e.v + 1];
    }
    for (int v = 0; v < n; ++v) counts[v + 1] += counts[v];
    g.offsets_ = counts;

    g.adj_.resize(g.offsets_[n]);
    g.adj_w_.resize(g.offsets_[n]);
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto& e : g.edges_) {
        g.adj_[cursor[e.u]] = e.v;
        g.adj_w_[cursor[e.u]++] = e.w;
        g.adj_[cursor[e.v]] = e.u;
        g.adj_w_[cursor[e.v]++] = e.w;
    }

    // sort each neighbor row, then duplicates are adjacent
    for (int v = 0; v < n; ++v) {
        int lo = g.offsets_[v], hi = g.offsets_[v + 1];
        std::vector<int> order(hi - lo);
        for (int i = 0; i < hi - lo; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return g.adj_[lo + a] < g.adj_[lo + b];
        });
        std::vector<int> na(hi - lo);
        std::vector<double> nw(hi - lo);
        for (int i = 0; i < hi - lo; ++i) {
            na[i] = g.adj_[lo + order[i]];
            nw[i] = g.adj_w_[lo + order[i]];
        }
        for (int i = 1; i < hi - lo; ++i)
            if (na[i] == na[i - 1])
                throw duplicate_edge("duplicate edge (" + std::to_string(v) + "," +
                                     std::to_string(na[i]) + ")");
        std::copy(na.begin(), na.end(), g.adj_.begin() + lo);
        std::copy(nw.begin(), nw.end(), g.adj_w_.begin() + lo);
    }

    g.degree_.assign(n, 0.0);
    for (auto& e : g.edges_) {
        g.degree_[e.u] += e.w;
        g.degree_[e.v] += e.w;
    }
    return g;
}

bool graph::has_edge(int u, int v) const {
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

double graph::edge_weight(int u, int v) const {
    auto row = neighbors(u);
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v) return 0.0;
    return neighbor_weights(u)[it - row.begin()];
}

void apply_lazy_walk(const graph& g, std::span<const double> x, std::span<double> out) {
    const int n = g.num_vertices();
    if (static_cast<int>(x.size()) != n || static_cast<int>(out.size()) != n)
        throw dimension_mismatch("signal length " + std::to_string(x.size()) +
                                 " does not match vertex count " + std::to_string(n));
    // (A D^{-1} x)(u) = sum over neighbors v of w(u,v) * x(v) / d(v)
    for (int u = 0; u < n; ++u) {
        double acc = 0.0;
        auto nbr = g.neighbors(u);
        auto wts = g.neighbor_weights(u);
        for (std::size_t i = 0; i < nbr.size(); ++i)
            acc += wts[i] * x[nbr[i]] / g.degree(nbr[i]);
        out[u] = 0.5 * (x[u] + acc);
    }
    // zero-degree vertices have an empty column in A D^{-1}; the walk stays put
    for (int u = 0; u < n; ++u)
        if (g.neighbor_count(u) == 0) out[u] += 0.5 * x[u];
}

std::vector<double> apply_lazy_walk(const graph& g, std::span<const double> x) {
    std::vector<double> out(g.num_vertices());
    apply_lazy_walk(g, x, out);
    return out;
}

component_partition connected_components(const graph& g) {
    const int n = g.num_vertices();
    component_partition part;
    part.label.assign(n, -1);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        if (part.label[s] != -1) continue;
        int id = part.count++;
        part.label[s] = id;
        queue.push_back(s);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : g.neighbors(u)) {
                if (part.label[v] == -1) {
                    part.label[v] = id;
                    queue.push_back(v);
                }
            }
        }
    }
    return part;
}

bool is_connected(const graph& g) {
    if (g.num_vertices() == 0) return true;
    return connected_components(g).count == 1;
}

Eigen::MatrixXd normalized_laplacian(const graph& g) {
    const int n = g.num_vertices();
    std::vector<double> inv_sqrt(n);
    for (int v = 0; v < n; ++v) {
        if (!(g.degree(v) > 0.0))
            throw isolated_vertex("vertex " + std::to_string(v) + " has zero degree");
        inv_sqrt[v] = 1.0 / std::sqrt(g.degree(v));
    }
    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
    for (auto& e : g.edges()) {
        double val = e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
        lap(e.u, e.v) -= val;
        lap(e.v, e.u) -= val;
    }
    return lap;
}

} // namespace gscat
