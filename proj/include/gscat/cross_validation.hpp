#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gscat/svm.hpp"

namespace gscat {

// Per-dimension z-scoring; parameters come from training rows only.
struct standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale; // 1 where a column has zero variance

    static standardizer fit(const Eigen::MatrixXd& rows);
    Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& row) const;
};

struct hyper_grid {
    std::vector<double> cost_values{1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0};
    // relative values; the effective gamma is value / (feature count * variance)
    std::vector<double> gamma_values{1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
};

// One classification run: how the 10-subset pool is consumed, the seed that
// fixes fold assignment, the hyperparameter grid, and optional per-model
// dimensionality reduction of the feature space.
struct experiment_protocol {
    std::string split = "80-10-10"; // 80-10-10 | 70-10-20 | 40-10-50 | 20-10-70
    std::uint64_t seed = 0;
    hyper_grid grid;
    bool standardize = true;
    double pca_threshold = 0.0; // 0 = off; else explained-variance fraction
    unsigned workers = 0;
    smo_options smo;
};

struct cv_result {
    std::vector<double> fold_accuracies; // one per outer selection, in [0,1]
    double mean = 0.0;                   // percent
    double stddev = 0.0;                 // percent, population
    long nonconverged_models = 0;
};

// Stratified assignment of samples to `fold_count` subsets; deterministic in
// the seed. Returns the fold id per sample.
std::vector<int> stratified_folds(const std::vector<int>& labels, int fold_count,
                                  std::uint64_t seed);

// Ten-subset voting cross-validation. Each outer selection holds out a test
// block; every remaining subset serves once as the validation set of one
// inner model, which grid-searches (cost, gamma) on its own validation
// accuracy. The held-out block is classified by majority vote over the inner
// models, ties toward the smallest class id.
cv_result nested_cv(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                    const experiment_protocol& protocol);

struct split_study_row {
    std::string split;
    cv_result result;
};

// Runs the four training-budget protocols (80/10/10 down to 20/10/70) and
// reports one accuracy row per split.
std::vector<split_study_row> reduced_split_study(const Eigen::MatrixXd& features,
                                                 const std::vector<int>& labels,
                                                 const experiment_protocol& base);

} // namespace gscat
