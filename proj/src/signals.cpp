#include "gscat/signals.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace gscat {

const std::vector<double>& signal_set::at(std::string_view name) const {
    for (auto& e : entries)
        if (e.name == name) return e.values;
    throw missing_signal("no signal named '" + std::string(name) + "'");
}

bool signal_set::contains(std::string_view name) const {
    for (auto& e : entries)
        if (e.name == name) return true;
    return false;
}

std::vector<std::string> signal_set::names() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (auto& e : entries) out.push_back(e.name);
    return out;
}

std::vector<double> eccentricity(const graph& g) {
    const int n = g.num_vertices();
    std::vector<double> ecc(n, 0.0);
    std::vector<int> dist(n);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.push_back(s);
        int reached = 1, far = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            far = dist[u];
            for (int v : g.neighbors(u)) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    ++reached;
                    queue.push_back(v);
                }
            }
        }
        if (reached != n)
            throw disconnected_graph("eccentricity requires a connected graph");
        ecc[s] = far;
    }
    return ecc;
}

std::vector<double> clustering_coefficient(const graph& g) {
    const int n = g.num_vertices();
    std::vector<double> coeff(n, 0.0);
    for (int v = 0; v < n; ++v) {
        auto nbr = g.neighbors(v);
        const int deg = static_cast<int>(nbr.size());
        if (deg <= 1) continue;
        int links = 0;
        for (int i = 0; i < deg; ++i)
            for (int k = i + 1; k < deg; ++k)
                if (g.has_edge(nbr[i], nbr[k])) ++links;
        coeff[v] = 2.0 * links / (static_cast<double>(deg) * (deg - 1));
    }
    return coeff;
}

std::vector<double> degree_signal(const graph& g) { return g.degree_vector(); }

dataset_profile profile_for_dataset(std::string_view dataset_name) {
    auto matches = [&](std::string_view prefix) {
        return dataset_name.substr(0, prefix.size()) == prefix;
    };
    dataset_profile p;
    if (matches("REDDIT")) {
        p.connected_defaults = {computed_signal::degree, computed_signal::clustering};
        p.disconnected_defaults = p.connected_defaults;
        return p;
    }
    if (matches("COLLAB") || matches("IMDB")) {
        p.connected_defaults = {computed_signal::eccentricity_signal, computed_signal::degree,
                                computed_signal::clustering};
        return p;
    }
    return p;
}

namespace {

std::vector<double> compute(const graph& g, computed_signal kind) {
    switch (kind) {
        case computed_signal::eccentricity_signal: return eccentricity(g);
        case computed_signal::degree: return degree_signal(g);
        case computed_signal::clustering: return clustering_coefficient(g);
    }
    throw std::logic_error("unknown computed signal");
}

std::string signal_name(computed_signal kind) {
    switch (kind) {
        case computed_signal::eccentricity_signal: return "eccentricity";
        case computed_signal::degree: return "degree";
        case computed_signal::clustering: return "clustering";
    }
    throw std::logic_error("unknown computed signal");
}

void add_attribute_signals(signal_set& out, const graph& g, const node_data& provided) {
    const int n = g.num_vertices();
    const int cols = static_cast<int>(provided.attributes.empty()
                                          ? 0
                                          : provided.attributes.front().size());
    for (int c = 0; c < cols; ++c) {
        std::vector<double> col(n);
        for (int v = 0; v < n; ++v) col[v] = provided.attributes[v][c];
        out.add("attr_" + std::to_string(c), std::move(col), false);
    }
}

void add_label_signals(signal_set& out, const graph& g, const node_data& provided,
                       std::span<const int> alphabet) {
    const int n = g.num_vertices();
    for (int value : alphabet) {
        std::vector<double> col(n, 0.0);
        for (int v = 0; v < n; ++v)
            if (provided.labels[v] == value) col[v] = 1.0;
        out.add("label_" + std::to_string(value), std::move(col), false);
    }
}

} // namespace

signal_set default_signals(const graph& g, const dataset_profile& profile,
                           const node_data& provided,
                           std::span<const int> label_alphabet) {
    signal_set out;
    if (profile.use_node_data && !provided.attributes.empty()) {
        add_attribute_signals(out, g, provided);
        return out;
    }
    if (profile.use_node_data && !provided.labels.empty() && !label_alphabet.empty()) {
        add_label_signals(out, g, provided, label_alphabet);
        return out;
    }
    const auto& kinds =
        is_connected(g) ? profile.connected_defaults : profile.disconnected_defaults;
    for (auto kind : kinds) out.add(signal_name(kind), compute(g, kind));
    return out;
}

signal_set signals_from_selection(const graph& g, std::span<const std::string> tokens,
                                  const node_data& provided,
                                  std::span<const int> label_alphabet) {
    signal_set out;
    for (const auto& tok : tokens) {
        if (tok == "ecc")
            out.add("eccentricity", eccentricity(g));
        else if (tok == "deg")
            out.add("degree", degree_signal(g));
        else if (tok == "clust")
            out.add("clustering", clustering_coefficient(g));
        else if (tok == "attr")
            add_attribute_signals(out, g, provided);
        else if (tok == "label")
            add_label_signals(out, g, provided, label_alphabet);
        else
            throw missing_signal("unknown signal selector '" + tok + "'");
    }
    return out;
}

} // namespace gscat
