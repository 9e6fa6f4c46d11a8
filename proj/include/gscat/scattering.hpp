#pragma once

#include <span>
#include <string>
#include <vector>

#include "gscat/graph.hpp"
#include "gscat/signals.hpp"

namespace gscat {

enum class moment_mode { unnormalized, normalized };

// J band-pass scales and Q moments per vector; defaults are the working
// configuration used throughout classification and embedding runs.
struct scattering_config {
    int scales = 5;  // J
    int moments = 4; // Q
    moment_mode mode = moment_mode::normalized;
    std::vector<std::string> signal_names;

    int per_signal_size() const {
        return moments * (1 + scales + scales * (scales - 1) / 2);
    }
    int total_size() const {
        return per_signal_size() * static_cast<int>(signal_names.size());
    }
};

// Index record for one feature slot. order 0: plain moments of the signal;
// order 1: moments of one band magnitude (scale j); order 2: moments of the
// cascade |band j2 of |band j of x|| with j < j2.
struct feature_index {
    std::string signal;
    int order = 0;
    int j = 0;
    int j2 = 0;
    int q = 1;
};

std::vector<feature_index> feature_layout(const scattering_config& cfg);

// Q summary statistics of one vector: either raw power sums sum(v^q) or
// standardized statistics [mean, variance, skewness, kurtosis] (population
// conventions, non-excess kurtosis). A variance below 1e-24 reports zero
// skewness and kurtosis so constant vectors stay finite.
std::vector<double> moment_summary(std::span<const double> v, int count, moment_mode mode);

// Invariant feature block for a single signal, laid out per feature_layout.
std::vector<double> scatter_signal(const graph& g, std::span<const double> x,
                                   const scattering_config& cfg);

struct scattering_features {
    std::vector<double> values;
    std::vector<feature_index> layout;
};

// Concatenates per-signal blocks in cfg.signal_names order.
scattering_features scatter_graph(const graph& g, const signal_set& signals,
                                  const scattering_config& cfg);

} // namespace gscat
