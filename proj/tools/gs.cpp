// gs: geometric scattering features for graph datasets, with SVM
// classification, PCA dimensionality studies and class-subspace exploration.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gscat/cross_validation.hpp"
#include "gscat/dataset.hpp"
#include "gscat/pca.hpp"
#include "gscat/wavelets.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct run_config {
    std::string dataset;
    std::string data_dir;
    std::vector<std::string> signals; // empty: per-dataset profile
    int scales = 5;
    int moments = 4;
    std::string mode = "norm";
    std::string split = "80-10-10";
    std::uint64_t seed = 1;
    double threshold = 0.9;
    std::vector<double> thresholds{0.5, 0.8, 0.9, 0.99};
    std::string out_dir = "out";
    unsigned workers = 0;
    int graph_index = 0;
    int source = -1;

    json to_json() const {
        return json{{"dataset", dataset},   {"data_dir", data_dir},
                    {"signals", signals},   {"scales", scales},
                    {"moments", moments},   {"mode", mode},
                    {"split", split},       {"seed", seed},
                    {"threshold", threshold}, {"thresholds", thresholds},
                    {"out_dir", out_dir},   {"workers", workers}};
    }
};

gscat::moment_mode mode_of(const run_config& cfg) {
    return gscat::moment_mode_from_name(cfg.mode);
}

// atomic-ish output: write a temp file, rename on success
class output_file {
public:
    explicit output_file(fs::path path) : final_(std::move(path)), tmp_(final_.string() + ".tmp") {
        fs::create_directories(final_.parent_path().empty() ? "." : final_.parent_path());
        stream_.open(tmp_);
        if (!stream_) throw gscat::missing_file("cannot write " + tmp_.string());
    }
    std::ofstream& stream() { return stream_; }
    void commit() {
        stream_.close();
        fs::rename(tmp_, final_);
    }
    ~output_file() {
        if (fs::exists(tmp_)) {
            std::error_code ec;
            fs::remove(tmp_, ec);
        }
    }

private:
    fs::path final_;
    fs::path tmp_;
    std::ofstream stream_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_meta(const fs::path& csv_path, const run_config& cfg, const json& extra) {
    json meta{{"config", cfg.to_json()}};
    for (auto& [k, v] : extra.items()) meta[k] = v;
    output_file out(csv_path.string() + ".meta.json");
    out.stream() << meta.dump(2) << "\n";
    out.commit();
}

std::string config_comment(const run_config& cfg, std::uint64_t schema_hash) {
    json j = cfg.to_json();
    j["schema_hash"] = schema_hash;
    return "# config " + j.dump();
}

gscat::graph_dataset load_dataset(const run_config& cfg) {
    return gscat::load_tu_dataset(cfg.data_dir, cfg.dataset);
}

fs::path cache_path(const run_config& cfg) {
    std::string name = cfg.dataset + "_" + cfg.mode + "_J" + std::to_string(cfg.scales) +
                       "_Q" + std::to_string(cfg.moments);
    for (const auto& s : cfg.signals) name += "_" + s;
    return fs::path(cfg.out_dir) / (name + "_features.csv");
}

gscat::feature_table features_for(const run_config& cfg, const gscat::graph_dataset& data) {
    gscat::extract_options opts;
    opts.scales = cfg.scales;
    opts.moments = cfg.moments;
    opts.mode = mode_of(cfg);
    opts.signal_selection = cfg.signals;
    opts.workers = cfg.workers;

    const auto path = cache_path(cfg);
    if (fs::exists(path)) {
        try {
            auto cached = gscat::load_features(path);
            if (cached.schema.dataset == cfg.dataset && cached.schema.scales == cfg.scales &&
                cached.schema.moments == cfg.moments && cached.schema.mode == opts.mode)
                return cached;
        } catch (const gscat::error&) {
            // stale or foreign cache: rebuild below
        }
    }
    auto table = gscat::extract_features(data, opts);
    fs::create_directories(path.parent_path());
    gscat::save_features(path, table);
    return table;
}

int cmd_extract(const run_config& cfg) {
    auto data = load_dataset(cfg);
    gscat::extract_options opts;
    opts.scales = cfg.scales;
    opts.moments = cfg.moments;
    opts.mode = mode_of(cfg);
    opts.signal_selection = cfg.signals;
    opts.workers = cfg.workers;
    auto table = gscat::extract_features(data, opts);

    const auto path = cache_path(cfg);
    fs::create_directories(path.parent_path());
    gscat::save_features(path, table);
    write_meta(path, cfg,
               json{{"schema", json::parse(table.schema.canonical())},
                    {"schema_hash", table.schema.hash()},
                    {"graphs", data.num_graphs()},
                    {"classes", data.num_classes()},
                    {"symmetrized_edges", data.symmetrized_edges},
                    {"dropped_self_loops", data.dropped_self_loops}});
    std::cout << path.string() << ": " << table.features.rows() << " rows, "
              << table.features.cols() << " features\n";
    return 0;
}

gscat::experiment_protocol protocol_for(const run_config& cfg) {
    gscat::experiment_protocol proto;
    proto.split = cfg.split;
    proto.seed = cfg.seed;
    proto.workers = cfg.workers;
    return proto;
}

json grid_json(const gscat::hyper_grid& grid) {
    return json{{"cost", grid.cost_values}, {"gamma_relative", grid.gamma_values}};
}

void print_and_write_rows(const run_config& cfg, const fs::path& path,
                          const std::vector<gscat::split_study_row>& rows,
                          std::uint64_t schema_hash) {
    output_file out(path);
    auto emit = [&](std::ostream& os) {
        os << config_comment(cfg, schema_hash) << "\n";
        os << "split,mean_accuracy,std_accuracy,folds\n";
        for (const auto& row : rows) {
            os << row.split << "," << fmt(row.result.mean) << "," << fmt(row.result.stddev)
               << "," << row.result.fold_accuracies.size() << "\n";
        }
    };
    emit(out.stream());
    out.commit();
    emit(std::cout);
}

int cmd_classify(const run_config& cfg, bool all_splits) {
    auto data = load_dataset(cfg);
    auto table = features_for(cfg, data);
    auto proto = protocol_for(cfg);

    std::vector<gscat::split_study_row> rows;
    if (all_splits) {
        rows = gscat::reduced_split_study(table.features, table.labels, proto);
    } else {
        rows.push_back({cfg.split, gscat::nested_cv(table.features, table.labels, proto)});
    }

    const auto path = fs::path(cfg.out_dir) / (cfg.dataset + "_classify.csv");
    print_and_write_rows(cfg, path, rows, table.schema.hash());

    json folds = json::array();
    for (const auto& row : rows) folds.push_back({{"split", row.split},
                                                  {"accuracies", row.result.fold_accuracies},
                                                  {"nonconverged", row.result.nonconverged_models}});
    write_meta(path, cfg,
               json{{"grid", grid_json(proto.grid)},
                    {"schema_hash", table.schema.hash()},
                    {"rows", folds}});
    return 0;
}

int cmd_pca(const run_config& cfg) {
    auto data = load_dataset(cfg);
    auto table = features_for(cfg, data);

    auto model = gscat::pca_fit(table.features);
    const auto path = fs::path(cfg.out_dir) / (cfg.dataset + "_pca.csv");
    output_file out(path);
    out.stream() << config_comment(cfg, table.schema.hash()) << "\n";
    out.stream() << "threshold,dimension,mean_accuracy,std_accuracy\n";
    std::cout << "threshold,dimension,mean_accuracy,std_accuracy\n";
    json rows = json::array();
    for (double t : cfg.thresholds) {
        const int dims = gscat::threshold_dimension(model, t);
        auto proto = protocol_for(cfg);
        proto.pca_threshold = t;
        auto cv = gscat::nested_cv(table.features, table.labels, proto);
        out.stream() << fmt(t) << "," << dims << "," << fmt(cv.mean) << "," << fmt(cv.stddev)
                     << "\n";
        std::cout << fmt(t) << "," << dims << "," << fmt(cv.mean) << "," << fmt(cv.stddev)
                  << "\n";
        rows.push_back({{"threshold", t},
                        {"dimension", dims},
                        {"mean", cv.mean},
                        {"std", cv.stddev},
                        {"accuracies", cv.fold_accuracies}});
    }
    out.commit();
    write_meta(path, cfg, json{{"rows", rows}, {"schema_hash", table.schema.hash()}});
    return 0;
}

int cmd_explore(const run_config& cfg) {
    auto data = load_dataset(cfg);
    auto table = features_for(cfg, data);

    auto subspaces = gscat::fit_class_subspaces(table.features, table.labels, cfg.threshold);
    auto dist = gscat::class_distance_matrix(table.features, table.labels, subspaces);
    auto stats = gscat::nearest_subspace_stats(table.features, table.labels, subspaces);
    auto pref = gscat::ec_preference(dist, stats.incoherence);

    const auto hash = table.schema.hash();
    auto matrix_csv = [&](const fs::path& path, const Eigen::MatrixXd& m) {
        output_file out(path);
        out.stream() << config_comment(cfg, hash) << "\n";
        for (long r = 0; r < m.rows(); ++r) {
            for (long c = 0; c < m.cols(); ++c)
                out.stream() << (c ? "," : "") << fmt(m(r, c));
            out.stream() << "\n";
        }
        out.commit();
    };
    const fs::path base = fs::path(cfg.out_dir);
    matrix_csv(base / (cfg.dataset + "_distance_matrix.csv"), dist);
    matrix_csv(base / (cfg.dataset + "_preference.csv"), pref.pref);
    matrix_csv(base / (cfg.dataset + "_incoherence.csv"), stats.incoherence.transpose());

    {
        output_file out(base / (cfg.dataset + "_subspace_ranks.csv"));
        out.stream() << config_comment(cfg, hash) << "\n";
        out.stream() << "graph_id,label,true_class_rank\n";
        for (std::size_t i = 0; i < table.labels.size(); ++i)
            out.stream() << i << "," << table.labels[i] << "," << stats.true_class_rank[i]
                         << "\n";
        out.commit();
    }
    write_meta(base / (cfg.dataset + "_distance_matrix.csv"), cfg,
               json{{"true_first_fraction", stats.true_first_fraction},
                    {"true_second_fraction", stats.true_second_fraction},
                    {"subspace_dims", [&] {
                         json dims = json::array();
                         for (auto& s : subspaces) dims.push_back(s.dims);
                         return dims;
                     }()},
                    {"schema_hash", hash}});
    std::cout << cfg.dataset << ": true class nearest for "
              << 100.0 * stats.true_first_fraction << "% of samples\n";
    return 0;
}

int cmd_wavelets(const run_config& cfg) {
    auto data = load_dataset(cfg);
    if (cfg.graph_index < 0 || cfg.graph_index >= data.num_graphs())
        throw gscat::index_out_of_range("graph index " + std::to_string(cfg.graph_index) +
                                        " outside dataset of " +
                                        std::to_string(data.num_graphs()));
    const auto& g = data.graphs[cfg.graph_index];
    const int n = g.num_vertices();

    const auto path = fs::path(cfg.out_dir) /
                      (cfg.dataset + "_g" + std::to_string(cfg.graph_index) + "_wavelets.csv");
    output_file out(path);
    out.stream() << config_comment(cfg, 0) << "\n";
    out.stream() << "source,vertex,scale,value\n";
    std::vector<double> delta(n, 0.0);
    for (int src = 0; src < n; ++src) {
        if (cfg.source >= 0 && src != cfg.source) continue;
        delta.assign(n, 0.0);
        delta[src] = 1.0;
        auto coeffs = gscat::wavelet_transform(g, delta, cfg.scales);
        for (int j = 1; j <= cfg.scales; ++j)
            for (int v = 0; v < n; ++v)
                out.stream() << src << "," << v << "," << j << ","
                             << fmt(coeffs.bands[j - 1][v]) << "\n";
    }
    out.commit();
    write_meta(path, cfg, json{{"graph_vertices", n}});
    std::cout << path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric scattering toolkit"};
    app.require_subcommand(1);

    run_config cfg;
    if (const char* env = std::getenv("GS_DATA_DIR")) cfg.data_dir = env;
    if (cfg.data_dir.empty()) cfg.data_dir = "data";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--dataset", cfg.dataset, "dataset name")->required();
        sub->add_option("--data-dir", cfg.data_dir, "directory holding <name>/<name>_*.txt");
        sub->add_option("--signals", cfg.signals,
                        "signal selection (ecc, deg, clust, attr, label)")
            ->delimiter(',');
        sub->add_option("--scales", cfg.scales, "band-pass scale count J");
        sub->add_option("--moments", cfg.moments, "moments per vector Q");
        sub->add_option("--mode", cfg.mode, "norm | unnorm")
            ->check(CLI::IsMember({"norm", "unnorm", "normalized", "unnormalized"}));
        sub->add_option("--seed", cfg.seed, "root seed for all randomness");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
    };

    auto* extract = app.add_subcommand("extract", "compute and cache scattering features");
    add_common(extract);

    bool all_splits = false;
    auto* classify = app.add_subcommand("classify", "nested voting cross-validation");
    add_common(classify);
    classify->add_option("--split", cfg.split, "80-10-10 | 70-10-20 | 40-10-50 | 20-10-70");
    classify->add_flag("--all-splits", all_splits, "run the full training-budget study");

    auto* pca = app.add_subcommand("pca", "explained-variance dimensionality study");
    add_common(pca);
    pca->add_option("--thresholds", cfg.thresholds, "explained-variance fractions")
        ->delimiter(',');
    cfg.mode = "norm"; // reset below per-command defaults after parse

    auto* explore = app.add_subcommand("explore", "per-class subspace analysis");
    add_common(explore);
    explore->add_option("--threshold", cfg.threshold, "explained-variance fraction");

    auto* wavelets = app.add_subcommand("wavelets", "per-vertex band values of delta signals");
    add_common(wavelets);
    wavelets->add_option("--graph-index", cfg.graph_index, "graph to transform");
    wavelets->add_option("--source", cfg.source, "delta source vertex (-1 = all)");

    // embedding studies default to raw power-sum moments
    bool mode_given = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]).rfind("--mode", 0) == 0) mode_given = true;

    CLI11_PARSE(app, argc, argv);

    if (!mode_given && (pca->parsed() || explore->parsed())) cfg.mode = "unnorm";

    try {
        if (extract->parsed()) return cmd_extract(cfg);
        if (classify->parsed()) return cmd_classify(cfg, all_splits);
        if (pca->parsed()) return cmd_pca(cfg);
        if (explore->parsed()) return cmd_explore(cfg);
        if (wavelets->parsed()) return cmd_wavelets(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
