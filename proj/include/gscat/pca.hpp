#pragma once

#include <vector>

#include <Eigen/Core>

#include "gscat/errors.hpp"

namespace gscat {

// Affine principal-component model: sample mean plus an orthonormal basis
// ordered by descending variance. Component signs are fixed (largest-
// magnitude entry positive) so serialized models are reproducible.
struct pca_model {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components;      // columns, orthonormal
    Eigen::VectorXd variances;       // non-increasing, >= 0
    Eigen::VectorXd explained_ratio; // cumulative fractions, last == 1
    bool degenerate = false;         // all rows identical: zero total variance

    Eigen::VectorXd project(const Eigen::VectorXd& v, int dims) const;
    Eigen::VectorXd reconstruct(const Eigen::VectorXd& v, int dims) const;
};

// Spectral decomposition of the sample covariance (divide by m-1).
pca_model pca_fit(const Eigen::MatrixXd& samples);

// Smallest dimension whose cumulative explained variance reaches `fraction`;
// 0 for degenerate (zero-variance) data.
int threshold_dimension(const pca_model& model, double fraction);

struct class_subspace {
    int class_id = 0;
    double threshold = 0.9;
    int dims = 0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd basis; // first `dims` components
};

std::vector<class_subspace> fit_class_subspaces(const Eigen::MatrixXd& features,
                                                const std::vector<int>& labels,
                                                double threshold);

// Euclidean norm of the residual of (v - mean) after projection onto the
// subspace span.
double subspace_distance(const Eigen::VectorXd& v, const class_subspace& s);

// D(i,j) = mean distance of class-i samples from the class-j subspace.
Eigen::MatrixXd class_distance_matrix(const Eigen::MatrixXd& features,
                                      const std::vector<int>& labels,
                                      double threshold = 0.9);
Eigen::MatrixXd class_distance_matrix(const Eigen::MatrixXd& features,
                                      const std::vector<int>& labels,
                                      const std::vector<class_subspace>& subspaces);

// Rank statistics of each sample's true class among all subspace distances
// (rank 1 = nearest; distance ties break toward the smaller class id) and
// the per-class incoherence w_j = fraction of class-j samples whose nearest
// subspace is some other class.
struct nearest_subspace_result {
    std::vector<int> true_class_rank;  // per sample, 1-based
    Eigen::VectorXd incoherence;       // w_j per class
    double true_first_fraction = 0.0;  // rank 1
    double true_second_fraction = 0.0; // rank 2
};
nearest_subspace_result nearest_subspace_stats(const Eigen::MatrixXd& features,
                                               const std::vector<int>& labels,
                                               double threshold = 0.9);
nearest_subspace_result nearest_subspace_stats(const Eigen::MatrixXd& features,
                                               const std::vector<int>& labels,
                                               const std::vector<class_subspace>& subspaces);

// Exchange-preference scores between classes:
//   pref(i,j) = w_j / min{ D(i,j)/D(i,i), D(j,i)/D(j,j) },  i != j
// with the diagonal reported as zero. The bracketed factor is symmetric in
// (i,j); the w_j weight makes the result generally asymmetric.
struct preference_matrix {
    Eigen::MatrixXd distances;
    Eigen::VectorXd weights;
    Eigen::MatrixXd pref;
};
preference_matrix ec_preference(const Eigen::MatrixXd& distance, const Eigen::VectorXd& weights);

} // namespace gscat
