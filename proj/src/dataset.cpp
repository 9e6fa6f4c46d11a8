#include "gscat/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gscat/parallel.hpp"

namespace gscat {

using nlohmann::json;

namespace {

std::ifstream open_or_throw(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw missing_file("cannot open " + p.string());
    return in;
}

// Reads one integer per line; empty trailing lines are tolerated.
std::vector<int> read_int_column(const std::filesystem::path& p) {
    auto in = open_or_throw(p);
    std::vector<int> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(std::stoi(line));
        } catch (const std::exception&) {
            throw malformed_line(p.string() + ":" + std::to_string(line_no) +
                                 ": expected an integer, got '" + line + "'");
        }
    }
    return out;
}

std::vector<std::vector<double>> read_real_rows(const std::filesystem::path& p) {
    auto in = open_or_throw(p);
    std::vector<std::vector<double>> out;
    std::string line;
    long line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw malformed_line(p.string() + ":" + std::to_string(line_no) +
                                     ": expected a real number, got '" + cell + "'");
            }
        }
        if (row.empty())
            throw malformed_line(p.string() + ":" + std::to_string(line_no) + ": empty row");
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw malformed_line(p.string() + ":" + std::to_string(line_no) +
                                 ": expected " + std::to_string(width) + " columns, got " +
                                 std::to_string(row.size()));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

graph_dataset load_tu_dataset(const std::filesystem::path& dir, const std::string& name) {
    const auto base = dir / name / name;
    graph_dataset data;
    data.name = name;

    const auto indicator = read_int_column(base.string() + "_graph_indicator.txt");
    const long total_vertices = static_cast<long>(indicator.size());
    int num_graphs = 0;
    for (std::size_t i = 0; i < indicator.size(); ++i) {
        if (indicator[i] < 1)
            throw malformed_line(base.string() + "_graph_indicator.txt:" +
                                 std::to_string(i + 1) + ": graph id must be >= 1");
        num_graphs = std::max(num_graphs, indicator[i]);
    }

    // vertices are 1-indexed in files and contiguous per graph
    std::vector<int> graph_of(total_vertices);
    std::vector<int> local_id(total_vertices);
    std::vector<int> vertex_count(num_graphs, 0);
    for (long v = 0; v < total_vertices; ++v) {
        const int gid = indicator[v] - 1;
        graph_of[v] = gid;
        local_id[v] = vertex_count[gid]++;
    }

    const auto raw_labels = read_int_column(base.string() + "_graph_labels.txt");
    if (static_cast<int>(raw_labels.size()) != num_graphs)
        throw malformed_line(base.string() + "_graph_labels.txt: has " +
                             std::to_string(raw_labels.size()) + " labels for " +
                             std::to_string(num_graphs) + " graphs");

    // class ids remapped to contiguous 0-based, mapping kept
    {
        std::vector<int> distinct(raw_labels);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        data.label_values = distinct;
        data.labels.reserve(raw_labels.size());
        for (int raw : raw_labels) {
            auto it = std::lower_bound(distinct.begin(), distinct.end(), raw);
            data.labels.push_back(static_cast<int>(it - distinct.begin()));
        }
    }

    // undirected edge multiset per graph, normalized to (min,max)
    std::vector<std::map<std::pair<int, int>, int>> edge_count(num_graphs);
    {
        const auto path = base.string() + "_A.txt";
        auto in = open_or_throw(path);
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            int u = 0, v = 0;
            char comma = 0;
            std::stringstream ss(line);
            if (!(ss >> u >> comma >> v) || comma != ',')
                throw malformed_line(path + ":" + std::to_string(line_no) +
                                     ": expected 'u, v', got '" + line + "'");
            if (u < 1 || u > total_vertices || v < 1 || v > total_vertices)
                throw orphan_vertex(path + ":" + std::to_string(line_no) +
                                    ": vertex index outside graph_indicator range");
            const int gu = graph_of[u - 1], gv = graph_of[v - 1];
            if (gu != gv)
                throw edge_across_graphs(path + ":" + std::to_string(line_no) +
                                         ": endpoints belong to graphs " +
                                         std::to_string(gu + 1) + " and " +
                                         std::to_string(gv + 1));
            if (u == v) {
                ++data.dropped_self_loops;
                continue;
            }
            int a = local_id[u - 1], b = local_id[v - 1];
            if (a > b) std::swap(a, b);
            ++edge_count[gu][{a, b}];
        }
    }

    data.graphs.reserve(num_graphs);
    for (int gid = 0; gid < num_graphs; ++gid) {
        std::vector<weighted_edge> edges;
        edges.reserve(edge_count[gid].size());
        for (auto& [pair, count] : edge_count[gid]) {
            if (count == 1) ++data.symmetrized_edges;
            if (count > 2)
                throw duplicate_edge(name + ": graph " + std::to_string(gid + 1) +
                                     " lists edge (" + std::to_string(pair.first) + "," +
                                     std::to_string(pair.second) + ") " +
                                     std::to_string(count) + " times");
            edges.push_back({pair.first, pair.second, 1.0});
        }
        data.graphs.push_back(build_graph(vertex_count[gid], edges));
    }

    data.node_info.resize(num_graphs);
    const auto label_path = base.string() + "_node_labels.txt";
    if (std::filesystem::exists(label_path)) {
        auto values = read_int_column(label_path);
        if (static_cast<long>(values.size()) != total_vertices)
            throw malformed_line(label_path + ": has " + std::to_string(values.size()) +
                                 " rows for " + std::to_string(total_vertices) + " vertices");
        for (int gid = 0; gid < num_graphs; ++gid)
            data.node_info[gid].labels.resize(vertex_count[gid]);
        for (long v = 0; v < total_vertices; ++v)
            data.node_info[graph_of[v]].labels[local_id[v]] = values[v];
        std::vector<int> alphabet(values);
        std::sort(alphabet.begin(), alphabet.end());
        alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
        data.label_alphabet = alphabet;
    }
    const auto attr_path = base.string() + "_node_attributes.txt";
    if (std::filesystem::exists(attr_path)) {
        auto rows = read_real_rows(attr_path);
        if (static_cast<long>(rows.size()) != total_vertices)
            throw malformed_line(attr_path + ": has " + std::to_string(rows.size()) +
                                 " rows for " + std::to_string(total_vertices) + " vertices");
        for (int gid = 0; gid < num_graphs; ++gid)
            data.node_info[gid].attributes.resize(vertex_count[gid]);
        for (long v = 0; v < total_vertices; ++v)
            data.node_info[graph_of[v]].attributes[local_id[v]] = std::move(rows[v]);
    }
    return data;
}

const char* moment_mode_name(moment_mode mode) {
    return mode == moment_mode::normalized ? "normalized" : "unnormalized";
}

moment_mode moment_mode_from_name(const std::string& name) {
    if (name == "normalized" || name == "norm") return moment_mode::normalized;
    if (name == "unnormalized" || name == "unnorm") return moment_mode::unnormalized;
    throw schema_mismatch("unknown moment mode '" + name + "'");
}

std::string feature_schema::canonical() const {
    json j{{"dataset", dataset},
           {"scales", scales},
           {"moments", moments},
           {"mode", moment_mode_name(mode)},
           {"signals", signals}};
    return j.dump();
}

std::uint64_t feature_schema::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : canonical()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

feature_table extract_features(const graph_dataset& data, const extract_options& opts) {
    feature_table table;
    table.labels = data.labels;
    table.schema.dataset = data.name;
    table.schema.scales = opts.scales;
    table.schema.moments = opts.moments;
    table.schema.mode = opts.mode;

    const auto profile = profile_for_dataset(data.name);
    auto signals_for = [&](int gid) {
        const auto& g = data.graphs[gid];
        if (!opts.signal_selection.empty())
            return signals_from_selection(g, opts.signal_selection, data.node_info[gid],
                                          data.label_alphabet);
        return default_signals(g, profile, data.node_info[gid], data.label_alphabet);
    };

    if (data.graphs.empty()) return table;

    scattering_config cfg;
    cfg.scales = opts.scales;
    cfg.moments = opts.moments;
    cfg.mode = opts.mode;
    cfg.signal_names = signals_for(0).names();
    table.schema.signals = cfg.signal_names;

    table.features.resize(data.num_graphs(), cfg.total_size());
    parallel_for(
        data.graphs.size(),
        [&](std::size_t gid) {
            auto sig = signals_for(static_cast<int>(gid));
            auto feats = scatter_graph(data.graphs[gid], sig, cfg);
            for (int c = 0; c < cfg.total_size(); ++c)
                table.features(static_cast<long>(gid), c) = feats.values[c];
        },
        opts.workers);
    return table;
}

namespace {
constexpr const char* kMagic = "# gscat-features ";
}

void save_features(const std::filesystem::path& path, const feature_table& table) {
    std::ofstream out(path);
    if (!out) throw missing_file("cannot write " + path.string());
    json meta{{"schema", json::parse(table.schema.canonical())},
              {"schema_hash", table.schema.hash()}};
    out << kMagic << meta.dump() << "\n";
    out << "graph_id,label";
    for (long c = 0; c < table.features.cols(); ++c) out << ",f" << c;
    out << "\n";
    char buf[64];
    for (long r = 0; r < table.features.rows(); ++r) {
        out << r << "," << table.labels[r];
        for (long c = 0; c < table.features.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", table.features(r, c));
            out << "," << buf;
        }
        out << "\n";
    }
    if (!out) throw missing_file("failed while writing " + path.string());
}

feature_table load_features(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0)
        throw schema_mismatch(path.string() + ": missing schema line");
    feature_table table;
    try {
        auto meta = json::parse(line.substr(std::string(kMagic).size()));
        const auto& s = meta.at("schema");
        table.schema.dataset = s.at("dataset").get<std::string>();
        table.schema.scales = s.at("scales").get<int>();
        table.schema.moments = s.at("moments").get<int>();
        table.schema.mode = moment_mode_from_name(s.at("mode").get<std::string>());
        table.schema.signals = s.at("signals").get<std::vector<std::string>>();
        if (meta.at("schema_hash").get<std::uint64_t>() != table.schema.hash())
            throw schema_mismatch(path.string() + ": schema hash does not match contents");
    } catch (const json::exception& e) {
        throw schema_mismatch(path.string() + ": bad schema line: " + e.what());
    }

    if (!std::getline(in, line) || line.rfind("graph_id,label", 0) != 0)
        throw schema_mismatch(path.string() + ": missing header row");

    std::vector<std::vector<double>> rows;
    long line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw malformed_line(path.string() + ":" + std::to_string(line_no) +
                                     ": bad cell '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    const long cols = rows.empty() ? 0 : static_cast<long>(rows.front().size()) - 2;
    table.features.resize(static_cast<long>(rows.size()), cols);
    table.labels.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<long>(rows[r].size()) != cols + 2)
            throw malformed_line(path.string() + ": row " + std::to_string(r) +
                                 " has inconsistent width");
        table.labels[r] = static_cast<int>(rows[r][1]);
        for (long c = 0; c < cols; ++c) table.features(static_cast<long>(r), c) = rows[r][c + 2];
    }
    return table;
}

feature_table load_features(const std::filesystem::path& path,
                            const feature_schema& expected) {
    auto table = load_features(path);
    if (!(table.schema == expected))
        throw schema_mismatch(path.string() + ": cached schema " + table.schema.canonical() +
                              " does not match requested " + expected.canonical());
    return table;
}

} // namespace gscat
