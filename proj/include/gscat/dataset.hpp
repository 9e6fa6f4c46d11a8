#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gscat/graph.hpp"
#include "gscat/scattering.hpp"
#include "gscat/signals.hpp"

namespace gscat {

// One multi-graph classification dataset. Class labels are remapped to
// contiguous 0-based ids; label_values records the original value per id.
struct graph_dataset {
    std::string name;
    std::vector<graph> graphs;
    std::vector<int> labels;
    std::vector<int> label_values;
    std::vector<node_data> node_info;
    std::vector<int> label_alphabet; // distinct vertex-label values, ascending
    long symmetrized_edges = 0;      // file edges missing their reverse pair
    long dropped_self_loops = 0;

    int num_classes() const { return static_cast<int>(label_values.size()); }
    int num_graphs() const { return static_cast<int>(graphs.size()); }
};

// Reads the standard multi-file benchmark layout: <name>_A.txt (comma
// separated 1-indexed vertex pairs), <name>_graph_indicator.txt,
// <name>_graph_labels.txt, plus optional <name>_node_labels.txt and
// <name>_node_attributes.txt. Directed pairs collapse into one undirected
// unit-weight edge; self-loops are dropped and counted.
graph_dataset load_tu_dataset(const std::filesystem::path& dir, const std::string& name);

struct feature_schema {
    std::string dataset;
    int scales = 5;
    int moments = 4;
    moment_mode mode = moment_mode::normalized;
    std::vector<std::string> signals;

    std::string canonical() const;
    std::uint64_t hash() const;
    bool operator==(const feature_schema&) const = default;
};

struct feature_table {
    Eigen::MatrixXd features; // rows = graphs
    std::vector<int> labels;
    feature_schema schema;
};

struct extract_options {
    int scales = 5;
    int moments = 4;
    moment_mode mode = moment_mode::normalized;
    std::vector<std::string> signal_selection; // empty: per-dataset profile
    unsigned workers = 0;
};

// Whole-dataset feature extraction; per-graph work runs on a worker pool and
// rows land at their graph index, so output is deterministic.
feature_table extract_features(const graph_dataset& data, const extract_options& opts);

// CSV cache: one comment line carrying the schema, a header row
// graph_id,label,f0,..., then one row per graph at 17 significant digits
// (lossless double round-trip).
void save_features(const std::filesystem::path& path, const feature_table& table);
feature_table load_features(const std::filesystem::path& path);
// throws schema_mismatch unless the cached schema equals `expected`
feature_table load_features(const std::filesystem::path& path,
                            const feature_schema& expected);

const char* moment_mode_name(moment_mode mode);
moment_mode moment_mode_from_name(const std::string& name);

} // namespace gscat
