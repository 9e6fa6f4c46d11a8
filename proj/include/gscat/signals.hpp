#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gscat/graph.hpp"

namespace gscat {

// Ordered collection of named vertex signals for one graph. Order is the
// serialization order of downstream feature blocks, so it is part of the
// layout contract.
struct signal_set {
    struct entry {
        std::string name;
        std::vector<double> values;
        bool computed = true; // false when passed through from dataset files
    };
    std::vector<entry> entries;

    void add(std::string name, std::vector<double> values, bool computed = true) {
        entries.push_back({std::move(name), std::move(values), computed});
    }
    const std::vector<double>& at(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;
    std::size_t size() const { return entries.size(); }
};

// max hop distance to any other vertex, via BFS from every vertex;
// defined only on connected graphs
std::vector<double> eccentricity(const graph& g);

// fraction of a vertex's neighbor pairs that are themselves adjacent,
// on the unweighted skeleton; 0 for vertices of degree <= 1
std::vector<double> clustering_coefficient(const graph& g);

// weighted degree vector d
std::vector<double> degree_signal(const graph& g);

// Per-vertex categorical labels / numeric attributes as provided by a
// dataset; either list may be empty.
struct node_data {
    std::vector<int> labels;
    std::vector<std::vector<double>> attributes; // one row per vertex
};

enum class computed_signal { eccentricity_signal, degree, clustering };

// Which signals a dataset family uses when its files carry no usable vertex
// data, and whether provided vertex data takes precedence.
struct dataset_profile {
    std::vector<computed_signal> connected_defaults{computed_signal::eccentricity_signal,
                                                    computed_signal::clustering};
    std::vector<computed_signal> disconnected_defaults{computed_signal::degree,
                                                       computed_signal::clustering};
    bool use_node_data = true;
};

// Per-dataset-name profile: collaboration/movie sets use eccentricity +
// degree + clustering, discussion-thread sets drop eccentricity because they
// contain disconnected graphs, biochemistry sets rely on provided vertex data.
dataset_profile profile_for_dataset(std::string_view dataset_name);

// Assembles the signal set for one graph: provided attributes pass through
// unchanged, categorical labels are one-hot expanded over the dataset-wide
// alphabet, and otherwise the profile's computed signals are produced.
signal_set default_signals(const graph& g, const dataset_profile& profile,
                           const node_data& provided,
                           std::span<const int> label_alphabet);

// Explicit selection used by the CLI --signals override; token list over
// {ecc, deg, clust, attr, label}.
signal_set signals_from_selection(const graph& g, std::span<const std::string> tokens,
                                  const node_data& provided,
                                  std::span<const int> label_alphabet);

} // namespace gscat
