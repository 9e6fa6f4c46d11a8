#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "gscat/errors.hpp"

namespace gscat {

double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma);
double rbf_kernel(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double gamma);

Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct smo_options {
    double tolerance = 1e-3;
    long max_iterations = 0; // 0: max(10'000'000 / n, 100 * n)
};

// Raw solver output over one training block. coef(i) = alpha_i * y_i; rows
// with zero coefficient are not support vectors.
struct svm_dual_result {
    Eigen::VectorXd coef;
    double bias = 0.0;
    bool converged = true;
    long iterations = 0;
    double kkt_residual = 0.0; // max-violating-pair gap at exit
};

// Two-variable working-set dual ascent (maximal violating pair, second-order
// gain heuristic) over precomputed pairwise squared distances, so a
// hyperparameter grid can share one distance block. Non-convergence within
// the iteration budget is reported on the result, not thrown.
svm_dual_result smo_solve(const Eigen::MatrixXd& sq_dist, const std::vector<int>& labels_pm1,
                          double cost, double gamma, const smo_options& opts = {});

// decision value for a point given its squared distances to the training rows
double decision_from_distances(const svm_dual_result& dual, const Eigen::VectorXd& d2_to_train,
                               double gamma);

// Binary soft-margin model carrying its support vectors; decision(x) =
// sum_i coef_i K(sv_i, x) + bias.
struct svm_model {
    Eigen::MatrixXd support_vectors;
    Eigen::VectorXd dual_coef;
    double bias = 0.0;
    double gamma = 1.0;
    double cost = 1.0;
    int positive_class = 1;
    int negative_class = 0;
    bool converged = true;
    long iterations = 0;
    double kkt_residual = 0.0;
};

svm_model svm_train(const Eigen::MatrixXd& samples, const std::vector<int>& labels_pm1,
                    double cost, double gamma, const smo_options& opts = {});

double svm_decision(const svm_model& model, const Eigen::VectorXd& x);
int svm_predict(const svm_model& model, const Eigen::VectorXd& x);

// One-vs-one reduction for multiclass problems; ties in the vote count break
// toward the smallest class id.
struct ovo_classifier {
    int num_classes = 0;
    std::vector<svm_model> models; // pairs (a,b), a < b, lexicographic
    bool all_converged = true;
};
ovo_classifier train_one_vs_one(const Eigen::MatrixXd& samples, const std::vector<int>& labels,
                                int num_classes, double cost, double gamma,
                                const smo_options& opts = {});
int predict_one_vs_one(const ovo_classifier& clf, const Eigen::VectorXd& x);

} // namespace gscat
