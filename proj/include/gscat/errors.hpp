#pragma once

#include <stdexcept>
#include <string>

namespace gscat {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph construction and linear-operator preconditions
struct duplicate_edge : error { using error::error; };
struct self_loop : error { using error::error; };
struct non_positive_weight : error { using error::error; };
struct index_out_of_range : error { using error::error; };
struct isolated_vertex : error { using error::error; };
struct dimension_mismatch : error { using error::error; };

// vertex signals
struct disconnected_graph : error { using error::error; };
struct empty_vector : error { using error::error; };
struct missing_signal : error { using error::error; };

// dataset ingestion and feature cache
struct missing_file : error { using error::error; };
struct malformed_line : error { using error::error; };
struct edge_across_graphs : error { using error::error; };
struct orphan_vertex : error { using error::error; };
struct schema_mismatch : error { using error::error; };

// embedding analysis
struct too_few_samples : error { using error::error; };
struct class_too_small : error { using error::error; };
struct zero_self_distance : error { using error::error; };

// classification
struct degenerate_labels : error { using error::error; };
struct fold_too_small : error { using error::error; };

} // namespace gscat
