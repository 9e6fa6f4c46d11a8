#include "gscat/pca.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Dense>

namespace gscat {

Eigen::VectorXd pca_model::project(const Eigen::VectorXd& v, int dims) const {
    return components.leftCols(dims).transpose() * (v - mean);
}

Eigen::VectorXd pca_model::reconstruct(const Eigen::VectorXd& v, int dims) const {
    return mean + components.leftCols(dims) * project(v, dims);
}

pca_model pca_fit(const Eigen::MatrixXd& samples) {
    const long m = samples.rows();
    const long p = samples.cols();
    if (m < 2) throw too_few_samples("need at least 2 samples, got " + std::to_string(m));

    pca_model model;
    model.mean = samples.colwise().mean();
    Eigen::MatrixXd centered = samples.rowwise() - model.mean.transpose();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(m - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    // ascending from the solver; flip to descending variance
    model.components.resize(p, p);
    model.variances.resize(p);
    for (long k = 0; k < p; ++k) {
        model.variances(k) = std::max(0.0, solver.eigenvalues()(p - 1 - k));
        model.components.col(k) = solver.eigenvectors().col(p - 1 - k);
    }

    // deterministic sign: largest-magnitude entry of each component positive
    for (long k = 0; k < p; ++k) {
        long idx = 0;
        model.components.col(k).cwiseAbs().maxCoeff(&idx);
        if (model.components(idx, k) < 0) model.components.col(k) *= -1.0;
    }

    const double total = model.variances.sum();
    model.degenerate = !(total > 0.0);
    model.explained_ratio.resize(p);
    double cum = 0.0;
    for (long k = 0; k < p; ++k) {
        cum += model.variances(k);
        model.explained_ratio(k) = model.degenerate ? 1.0 : cum / total;
    }
    if (!model.degenerate) model.explained_ratio(p - 1) = 1.0; // absorb rounding
    return model;
}

int threshold_dimension(const pca_model& model, double fraction) {
    if (model.degenerate) return 0;
    for (long k = 0; k < model.explained_ratio.size(); ++k)
        if (model.explained_ratio(k) >= fraction) return static_cast<int>(k + 1);
    return static_cast<int>(model.explained_ratio.size());
}

std::vector<class_subspace> fit_class_subspaces(const Eigen::MatrixXd& features,
                                                const std::vector<int>& labels,
                                                double threshold) {
    const int num_classes = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<class_subspace> out;
    out.reserve(num_classes);
    for (int c = 0; c < num_classes; ++c) {
        std::vector<long> rows;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == c) rows.push_back(static_cast<long>(i));
        if (rows.size() < 2)
            throw class_too_small("class " + std::to_string(c) + " has " +
                                  std::to_string(rows.size()) + " member(s)");
        Eigen::MatrixXd block(rows.size(), features.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) block.row(r) = features.row(rows[r]);
        auto model = pca_fit(block);
        class_subspace s;
        s.class_id = c;
        s.threshold = threshold;
        s.dims = threshold_dimension(model, threshold);
        s.mean = model.mean;
        s.basis = model.components.leftCols(s.dims);
        out.push_back(std::move(s));
    }
    return out;
}

double subspace_distance(const Eigen::VectorXd& v, const class_subspace& s) {
    if (v.size() != s.mean.size())
        throw dimension_mismatch("vector length " + std::to_string(v.size()) +
                                 " does not match subspace dimension " +
                                 std::to_string(s.mean.size()));
    Eigen::VectorXd r = v - s.mean;
    if (s.dims > 0) r -= s.basis * (s.basis.transpose() * r);
    return r.norm();
}

Eigen::MatrixXd class_distance_matrix(const Eigen::MatrixXd& features,
                                      const std::vector<int>& labels,
                                      const std::vector<class_subspace>& subspaces) {
    const int num_classes = static_cast<int>(subspaces.size());
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(num_classes, num_classes);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(num_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        counts(labels[i]) += 1.0;
        const Eigen::VectorXd v = features.row(static_cast<long>(i));
        for (int j = 0; j < num_classes; ++j)
            dist(labels[i], j) += subspace_distance(v, subspaces[j]);
    }
    for (int i = 0; i < num_classes; ++i) dist.row(i) /= counts(i);
    return dist;
}

Eigen::MatrixXd class_distance_matrix(const Eigen::MatrixXd& features,
                                      const std::vector<int>& labels, double threshold) {
    return class_distance_matrix(features, labels,
                                 fit_class_subspaces(features, labels, threshold));
}

nearest_subspace_result nearest_subspace_stats(const Eigen::MatrixXd& features,
                                               const std::vector<int>& labels,
                                               const std::vector<class_subspace>& subspaces) {
    const int num_classes = static_cast<int>(subspaces.size());
    nearest_subspace_result res;
    res.true_class_rank.resize(labels.size());
    Eigen::VectorXd wrong = Eigen::VectorXd::Zero(num_classes);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(num_classes);
    long first = 0, second = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const Eigen::VectorXd v = features.row(static_cast<long>(i));
        std::vector<double> d(num_classes);
        for (int j = 0; j < num_classes; ++j) d[j] = subspace_distance(v, subspaces[j]);
        const int truth = labels[i];
        // rank among all classes; ties resolve toward the smaller class id
        int rank = 1;
        for (int j = 0; j < num_classes; ++j) {
            if (j == truth) continue;
            if (d[j] < d[truth] || (d[j] == d[truth] && j < truth)) ++rank;
        }
        res.true_class_rank[i] = rank;
        counts(truth) += 1.0;
        if (rank != 1) wrong(truth) += 1.0;
        if (rank == 1) ++first;
        if (rank == 2) ++second;
    }
    res.incoherence = wrong.cwiseQuotient(counts);
    res.true_first_fraction = static_cast<double>(first) / static_cast<double>(labels.size());
    res.true_second_fraction = static_cast<double>(second) / static_cast<double>(labels.size());
    return res;
}

nearest_subspace_result nearest_subspace_stats(const Eigen::MatrixXd& features,
                                               const std::vector<int>& labels,
                                               double threshold) {
    return nearest_subspace_stats(features, labels,
                                  fit_class_subspaces(features, labels, threshold));
}

preference_matrix ec_preference(const Eigen::MatrixXd& distance,
                                const Eigen::VectorXd& weights) {
    const int c = static_cast<int>(distance.rows());
    for (int i = 0; i < c; ++i)
        if (!(distance(i, i) > 0.0))
            throw zero_self_distance("D(" + std::to_string(i) + "," + std::to_string(i) +
                                     ") must be positive");
    preference_matrix out;
    out.distances = distance;
    out.weights = weights;
    out.pref = Eigen::MatrixXd::Zero(c, c);
    for (int i = 0; i < c; ++i) {
        for (int j = 0; j < c; ++j) {
            if (i == j) continue;
            const double factor = std::min(distance(i, j) / distance(i, i),
                                           distance(j, i) / distance(j, j));
            out.pref(i, j) = weights(j) / factor;
        }
    }
    return out;
}

} // namespace gscat
