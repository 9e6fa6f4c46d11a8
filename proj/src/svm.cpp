#include "gscat/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gscat {

double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma) {
    if (u.size() != v.size())
        throw dimension_mismatch("kernel arguments of length " + std::to_string(u.size()) +
                                 " and " + std::to_string(v.size()));
    double d2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

double rbf_kernel(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double gamma) {
    if (u.size() != v.size())
        throw dimension_mismatch("kernel arguments of length " + std::to_string(u.size()) +
                                 " and " + std::to_string(v.size()));
    return std::exp(-gamma * (u - v).squaredNorm());
}

Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols())
        throw dimension_mismatch("point sets with " + std::to_string(a.cols()) + " and " +
                                 std::to_string(b.cols()) + " coordinates");
    const Eigen::VectorXd a2 = a.rowwise().squaredNorm();
    const Eigen::VectorXd b2 = b.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = (-2.0 * (a * b.transpose())).colwise() + a2;
    d2.rowwise() += b2.transpose();
    return d2.cwiseMax(0.0);
}

svm_dual_result smo_solve(const Eigen::MatrixXd& sq_dist, const std::vector<int>& labels_pm1,
                          double cost, double gamma, const smo_options& opts) {
    const long n = sq_dist.rows();
    if (sq_dist.cols() != n || n != static_cast<long>(labels_pm1.size()))
        throw dimension_mismatch("distance block and labels disagree");
    bool has_pos = false, has_neg = false;
    for (int y : labels_pm1) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw degenerate_labels("labels must be +1/-1, got " + std::to_string(y));
    }
    if (!has_pos || !has_neg)
        throw degenerate_labels("training set contains a single class");

    const Eigen::MatrixXd kernel = (-gamma * sq_dist).array().exp();
    const double tau = 1e-12;
    const double C = cost;

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0); // gradient of the dual objective
    const auto& y = labels_pm1;

    long max_iter = opts.max_iterations;
    if (max_iter <= 0) max_iter = std::max<long>(10000000 / std::max<long>(n, 1), 100 * n);

    auto in_up = [&](long t) { return (y[t] == 1 && alpha[t] < C) || (y[t] == -1 && alpha[t] > 0); };
    auto in_low = [&](long t) { return (y[t] == -1 && alpha[t] < C) || (y[t] == 1 && alpha[t] > 0); };

    long iter = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (; iter < max_iter; ++iter) {
        // i: maximal violator among the "up" set
        long i = -1;
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        for (long t = 0; t < n; ++t) {
            if (in_up(t) && -y[t] * grad[t] > g_max) {
                g_max = -y[t] * grad[t];
                i = t;
            }
            if (in_low(t)) g_min = std::min(g_min, -y[t] * grad[t]);
        }
        gap = g_max - g_min;
        if (gap < opts.tolerance || i < 0) break;

        // j: best second-order decrease among violated "low" candidates
        long j = -1;
        double best = 0.0;
        for (long t = 0; t < n; ++t) {
            if (!in_low(t)) continue;
            const double b = g_max + y[t] * grad[t];
            if (b <= 0) continue;
            // curvature along the feasible direction y_i e_i - y_t e_t
            double a = kernel(i, i) + kernel(t, t) - 2.0 * kernel(i, t);
            if (a <= 0) a = tau;
            const double dec = -(b * b) / a;
            if (dec < best) {
                best = dec;
                j = t;
            }
        }
        if (j < 0) break;

        const double old_ai = alpha[i], old_aj = alpha[j];
        double quad = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
        if (quad <= 0) quad = tau;
        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0 && alpha[j] < 0) {
                alpha[j] = 0;
                alpha[i] = diff;
            } else if (diff <= 0 && alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = -diff;
            }
            if (diff > 0 && alpha[i] > C) {
                alpha[i] = C;
                alpha[j] = C - diff;
            } else if (diff <= 0 && alpha[j] > C) {
                alpha[j] = C;
                alpha[i] = C + diff;
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C && alpha[i] > C) {
                alpha[i] = C;
                alpha[j] = sum - C;
            } else if (sum <= C && alpha[j] < 0) {
                alpha[j] = 0;
                alpha[i] = sum;
            }
            if (sum > C && alpha[j] > C) {
                alpha[j] = C;
                alpha[i] = sum - C;
            } else if (sum <= C && alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = sum;
            }
        }

        const double di = y[i] * (alpha[i] - old_ai);
        const double dj = y[j] * (alpha[j] - old_aj);
        for (long t = 0; t < n; ++t)
            grad[t] += y[t] * (kernel(t, i) * di + kernel(t, j) * dj);
    }

    svm_dual_result result;
    result.converged = gap < opts.tolerance;
    result.iterations = iter;
    result.kkt_residual = gap;

    // bias from the box structure of the final gradient
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    long free_count = 0;
    for (long t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (alpha[t] >= C) {
            if (y[t] == -1) upper = std::min(upper, yg);
            else lower = std::max(lower, yg);
        } else if (alpha[t] <= 0) {
            if (y[t] == 1) upper = std::min(upper, yg);
            else lower = std::max(lower, yg);
        } else {
            free_sum += yg;
            ++free_count;
        }
    }
    result.bias = -(free_count > 0 ? free_sum / free_count : 0.5 * (upper + lower));

    result.coef.resize(n);
    for (long t = 0; t < n; ++t) result.coef(t) = alpha[t] * y[t];
    return result;
}

double decision_from_distances(const svm_dual_result& dual, const Eigen::VectorXd& d2_to_train,
                               double gamma) {
    if (d2_to_train.size() != dual.coef.size())
        throw dimension_mismatch("distance row does not match the training block");
    double acc = dual.bias;
    for (long t = 0; t < dual.coef.size(); ++t) {
        if (dual.coef(t) == 0.0) continue;
        acc += dual.coef(t) * std::exp(-gamma * d2_to_train(t));
    }
    return acc;
}

svm_model svm_train(const Eigen::MatrixXd& samples, const std::vector<int>& labels_pm1,
                    double cost, double gamma, const smo_options& opts) {
    auto dual = smo_solve(pairwise_sq_dists(samples, samples), labels_pm1, cost, gamma, opts);

    svm_model model;
    model.gamma = gamma;
    model.cost = cost;
    model.converged = dual.converged;
    model.iterations = dual.iterations;
    model.kkt_residual = dual.kkt_residual;
    model.bias = dual.bias;

    long sv_count = 0;
    for (long t = 0; t < dual.coef.size(); ++t)
        if (dual.coef(t) != 0.0) ++sv_count;
    model.support_vectors.resize(sv_count, samples.cols());
    model.dual_coef.resize(sv_count);
    long s = 0;
    for (long t = 0; t < dual.coef.size(); ++t) {
        if (dual.coef(t) == 0.0) continue;
        model.support_vectors.row(s) = samples.row(t);
        model.dual_coef(s) = dual.coef(t);
        ++s;
    }
    return model;
}

double svm_decision(const svm_model& model, const Eigen::VectorXd& x) {
    double acc = model.bias;
    for (long s = 0; s < model.support_vectors.rows(); ++s) {
        const double d2 = (model.support_vectors.row(s).transpose() - x).squaredNorm();
        acc += model.dual_coef(s) * std::exp(-model.gamma * d2);
    }
    return acc;
}

int svm_predict(const svm_model& model, const Eigen::VectorXd& x) {
    return svm_decision(model, x) >= 0 ? model.positive_class : model.negative_class;
}

ovo_classifier train_one_vs_one(const Eigen::MatrixXd& samples, const std::vector<int>& labels,
                                int num_classes, double cost, double gamma,
                                const smo_options& opts) {
    ovo_classifier clf;
    clf.num_classes = num_classes;
    for (int a = 0; a < num_classes; ++a) {
        for (int b = a + 1; b < num_classes; ++b) {
            std::vector<long> rows;
            std::vector<int> y;
            for (std::size_t t = 0; t < labels.size(); ++t) {
                if (labels[t] == a || labels[t] == b) {
                    rows.push_back(static_cast<long>(t));
                    y.push_back(labels[t] == a ? 1 : -1);
                }
            }
            Eigen::MatrixXd block(rows.size(), samples.cols());
            for (std::size_t r = 0; r < rows.size(); ++r) block.row(r) = samples.row(rows[r]);
            auto model = svm_train(block, y, cost, gamma, opts);
            model.positive_class = a;
            model.negative_class = b;
            clf.all_converged = clf.all_converged && model.converged;
            clf.models.push_back(std::move(model));
        }
    }
    return clf;
}

int predict_one_vs_one(const ovo_classifier& clf, const Eigen::VectorXd& x) {
    std::vector<int> votes(clf.num_classes, 0);
    for (const auto& m : clf.models) ++votes[svm_predict(m, x)];
    int best = 0;
    for (int c = 1; c < clf.num_classes; ++c)
        if (votes[c] > votes[best]) best = c;
    return best;
}

} // namespace gscat
