#include "gscat/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gscat/parallel.hpp"
#include "gscat/pca.hpp"
#include "gscat/rng.hpp"

namespace gscat {

standardizer standardizer::fit(const Eigen::MatrixXd& rows) {
    standardizer s;
    s.mean = rows.colwise().mean();
    Eigen::MatrixXd centered = rows.rowwise() - s.mean.transpose();
    Eigen::VectorXd var = centered.array().square().colwise().mean();
    s.scale = var.array().sqrt();
    for (long c = 0; c < s.scale.size(); ++c)
        if (!(s.scale(c) > 0.0)) s.scale(c) = 1.0;
    return s;
}

Eigen::MatrixXd standardizer::apply(const Eigen::MatrixXd& rows) const {
    return (rows.rowwise() - mean.transpose()).array().rowwise() /
           scale.transpose().array();
}

Eigen::VectorXd standardizer::apply(const Eigen::VectorXd& row) const {
    return (row - mean).cwiseQuotient(scale);
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int fold_count,
                                  std::uint64_t seed) {
    if (fold_count < 2) throw fold_too_small("need at least 2 folds");
    const int num_classes =
        labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::vector<int>> by_class(num_classes);
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i]].push_back(static_cast<int>(i));

    auto rng = make_rng(seed, "fold-assignment");
    std::vector<int> fold(labels.size());
    long dealt = 0; // running offset keeps fold sizes balanced across classes
    for (auto& members : by_class) {
        std::shuffle(members.begin(), members.end(), rng);
        for (int idx : members) fold[idx] = static_cast<int>(dealt++ % fold_count);
    }
    return fold;
}

namespace {

struct subset_selection {
    std::vector<int> trainval_folds;
    std::vector<int> test_folds;
};

std::vector<subset_selection> plan_selections(const std::string& split, int pool,
                                              std::uint64_t seed) {
    std::vector<subset_selection> plan;
    auto others = [&](const std::vector<int>& chosen) {
        std::vector<int> out;
        for (int f = 0; f < pool; ++f)
            if (std::find(chosen.begin(), chosen.end(), f) == chosen.end()) out.push_back(f);
        return out;
    };
    if (split == "80-10-10") {
        for (int t = 0; t < pool; ++t) plan.push_back({others({t}), {t}});
    } else if (split == "70-10-20") {
        for (int t = 0; t < pool / 2; ++t) {
            std::vector<int> test{2 * t, 2 * t + 1};
            plan.push_back({others(test), test});
        }
    } else if (split == "40-10-50") {
        for (int t = 0; t < 2; ++t) {
            std::vector<int> test;
            for (int f = 0; f < pool / 2; ++f) test.push_back(t * (pool / 2) + f);
            plan.push_back({others(test), test});
        }
    } else if (split == "20-10-70") {
        // ten random draws of 3 subsets for training/validation, rest as test
        for (int rep = 0; rep < 10; ++rep) {
            auto rng = make_rng(seed, "low-train-rep-" + std::to_string(rep));
            std::vector<int> all(pool);
            std::iota(all.begin(), all.end(), 0);
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<int> trainval(all.begin(), all.begin() + 3);
            std::sort(trainval.begin(), trainval.end());
            plan.push_back({trainval, others(trainval)});
        }
    } else {
        throw fold_too_small("unknown split profile '" + split + "'");
    }
    return plan;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<int>& rows) {
    Eigen::MatrixXd out(rows.size(), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = m.row(rows[r]);
    return out;
}

// Feature pipeline owned by one inner model: optional subspace reduction
// fitted on raw training rows, then z-scoring. gamma is expressed relative
// to 1 / (dims * variance) of the transformed training block.
struct fitted_pipeline {
    bool use_pca = false;
    pca_model pca;
    int pca_dims = 0;
    standardizer scaler;
    double gamma_scale = 1.0;

    Eigen::MatrixXd transform(const Eigen::MatrixXd& rows) const {
        Eigen::MatrixXd z = rows;
        if (use_pca) {
            Eigen::MatrixXd proj(rows.rows(), pca_dims);
            for (long r = 0; r < rows.rows(); ++r)
                proj.row(r) = pca.project(rows.row(r), pca_dims);
            z = proj;
        }
        return scaler.apply(z);
    }
};

fitted_pipeline fit_pipeline(const Eigen::MatrixXd& train, const experiment_protocol& proto) {
    fitted_pipeline p;
    Eigen::MatrixXd stage = train;
    if (proto.pca_threshold > 0.0) {
        p.use_pca = true;
        p.pca = pca_fit(train);
        p.pca_dims = std::max(1, threshold_dimension(p.pca, proto.pca_threshold));
        Eigen::MatrixXd proj(train.rows(), p.pca_dims);
        for (long r = 0; r < train.rows(); ++r)
            proj.row(r) = p.pca.project(train.row(r), p.pca_dims);
        stage = proj;
    }
    p.scaler = standardizer::fit(stage);
    if (!proto.standardize) {
        p.scaler.mean.setZero();
        p.scaler.scale.setOnes();
    }
    Eigen::MatrixXd z = p.scaler.apply(stage);
    const double var = (z.array() - z.mean()).square().mean();
    p.gamma_scale = 1.0 / (static_cast<double>(z.cols()) * (var > 0.0 ? var : 1.0));
    return p;
}

struct inner_model {
    fitted_pipeline pipeline;
    ovo_classifier classifier;
    long nonconverged = 0;
};

// Grid search shares one squared-distance block per class pair; only the
// winning (cost, gamma) is retrained into the voting model.
inner_model train_inner_model(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                              int num_classes, const std::vector<int>& train_rows,
                              const std::vector<int>& val_rows,
                              const experiment_protocol& proto) {
    if (train_rows.empty() || val_rows.empty())
        throw fold_too_small("empty training or validation subset");

    std::vector<int> y_train, y_val;
    for (int r : train_rows) y_train.push_back(labels[r]);
    for (int r : val_rows) y_val.push_back(labels[r]);

    const Eigen::MatrixXd raw_train = take_rows(features, train_rows);
    const Eigen::MatrixXd raw_val = take_rows(features, val_rows);

    inner_model best;
    best.pipeline = fit_pipeline(raw_train, proto);
    const Eigen::MatrixXd z_train = best.pipeline.transform(raw_train);
    const Eigen::MatrixXd z_val = best.pipeline.transform(raw_val);

    struct pair_block {
        int pos_class, neg_class;
        std::vector<int> y;
        Eigen::MatrixXd d2_train; // within the pair's training rows
        Eigen::MatrixXd d2_val;   // all validation rows vs the pair's rows
    };
    std::vector<pair_block> pairs;
    for (int a = 0; a < num_classes; ++a) {
        for (int b = a + 1; b < num_classes; ++b) {
            pair_block block;
            block.pos_class = a;
            block.neg_class = b;
            std::vector<long> rows;
            for (std::size_t t = 0; t < y_train.size(); ++t) {
                if (y_train[t] == a || y_train[t] == b) {
                    rows.push_back(static_cast<long>(t));
                    block.y.push_back(y_train[t] == a ? 1 : -1);
                }
            }
            Eigen::MatrixXd sub(rows.size(), z_train.cols());
            for (std::size_t r = 0; r < rows.size(); ++r) sub.row(r) = z_train.row(rows[r]);
            block.d2_train = pairwise_sq_dists(sub, sub);
            block.d2_val = pairwise_sq_dists(z_val, sub);
            pairs.push_back(std::move(block));
        }
    }

    double best_acc = -1.0;
    double best_cost = proto.grid.cost_values.front();
    double best_gamma_rel = proto.grid.gamma_values.front();
    for (double cost : proto.grid.cost_values) {
        for (double gamma_rel : proto.grid.gamma_values) {
            const double gamma = gamma_rel * best.pipeline.gamma_scale;
            std::vector<std::vector<int>> votes(z_val.rows(),
                                                std::vector<int>(num_classes, 0));
            for (const auto& block : pairs) {
                auto dual = smo_solve(block.d2_train, block.y, cost, gamma, proto.smo);
                for (long r = 0; r < z_val.rows(); ++r) {
                    const double dec =
                        decision_from_distances(dual, block.d2_val.row(r).transpose(), gamma);
                    ++votes[r][dec >= 0 ? block.pos_class : block.neg_class];
                }
            }
            long correct = 0;
            for (long r = 0; r < z_val.rows(); ++r) {
                int winner = 0;
                for (int c = 1; c < num_classes; ++c)
                    if (votes[r][c] > votes[r][winner]) winner = c;
                if (winner == y_val[r]) ++correct;
            }
            const double acc = static_cast<double>(correct) / static_cast<double>(z_val.rows());
            if (acc > best_acc) {
                best_acc = acc;
                best_cost = cost;
                best_gamma_rel = gamma_rel;
            }
        }
    }

    best.classifier = train_one_vs_one(z_train, y_train, num_classes, best_cost,
                                       best_gamma_rel * best.pipeline.gamma_scale, proto.smo);
    if (!best.classifier.all_converged) best.nonconverged = 1;
    return best;
}

} // namespace

cv_result nested_cv(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                    const experiment_protocol& protocol) {
    const int pool = 10;
    const int num_classes =
        labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    const auto fold_of = stratified_folds(labels, pool, protocol.seed);
    const auto plan = plan_selections(protocol.split, pool, protocol.seed);

    cv_result result;
    result.fold_accuracies.resize(plan.size());

    std::vector<long> nonconverged(plan.size(), 0);
    for (std::size_t sel = 0; sel < plan.size(); ++sel) {
        const auto& selection = plan[sel];
        std::vector<int> test_rows;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (std::find(selection.test_folds.begin(), selection.test_folds.end(),
                          fold_of[i]) != selection.test_folds.end())
                test_rows.push_back(static_cast<int>(i));
        if (test_rows.empty()) throw fold_too_small("empty test block");

        const auto& tv = selection.trainval_folds;
        std::vector<inner_model> models(tv.size());
        parallel_for(
            tv.size(),
            [&](std::size_t m) {
                std::vector<int> train_rows, val_rows;
                for (std::size_t i = 0; i < labels.size(); ++i) {
                    const int f = fold_of[i];
                    if (f == tv[m]) {
                        val_rows.push_back(static_cast<int>(i));
                    } else if (std::find(tv.begin(), tv.end(), f) != tv.end()) {
                        train_rows.push_back(static_cast<int>(i));
                    }
                }
                models[m] = train_inner_model(features, labels, num_classes, train_rows,
                                              val_rows, protocol);
            },
            protocol.workers);

        for (const auto& m : models) nonconverged[sel] += m.nonconverged;

        long correct = 0;
        for (int row : test_rows) {
            std::vector<int> votes(num_classes, 0);
            const Eigen::MatrixXd raw = features.row(row);
            for (const auto& m : models) {
                const Eigen::MatrixXd z = m.pipeline.transform(raw);
                ++votes[predict_one_vs_one(m.classifier, z.row(0).transpose())];
            }
            int winner = 0;
            for (int c = 1; c < num_classes; ++c)
                if (votes[c] > votes[winner]) winner = c;
            if (winner == labels[row]) ++correct;
        }
        result.fold_accuracies[sel] =
            static_cast<double>(correct) / static_cast<double>(test_rows.size());
    }

    for (long n : nonconverged) result.nonconverged_models += n;
    const double k = static_cast<double>(result.fold_accuracies.size());
    double mean = 0.0;
    for (double a : result.fold_accuracies) mean += a;
    mean /= k;
    double var = 0.0;
    for (double a : result.fold_accuracies) var += (a - mean) * (a - mean);
    var /= k;
    result.mean = 100.0 * mean;
    result.stddev = 100.0 * std::sqrt(var);
    return result;
}

std::vector<split_study_row> reduced_split_study(const Eigen::MatrixXd& features,
                                                 const std::vector<int>& labels,
                                                 const experiment_protocol& base) {
    std::vector<split_study_row> rows;
    for (const char* split : {"80-10-10", "70-10-20", "40-10-50", "20-10-70"}) {
        experiment_protocol proto = base;
        proto.split = split;
        rows.push_back({split, nested_cv(features, labels, proto)});
    }
    return rows;
}

} // namespace gscat
