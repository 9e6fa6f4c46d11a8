#include "gscat/scattering.hpp"

#include <cmath>
#include <string>

#include "gscat/wavelets.hpp"

namespace gscat {

std::vector<feature_index> feature_layout(const scattering_config& cfg) {
    std::vector<feature_index> out;
    out.reserve(cfg.total_size());
    for (const auto& name : cfg.signal_names) {
        for (int q = 1; q <= cfg.moments; ++q) out.push_back({name, 0, 0, 0, q});
        for (int j = 1; j <= cfg.scales; ++j)
            for (int q = 1; q <= cfg.moments; ++q) out.push_back({name, 1, j, 0, q});
        for (int j = 1; j <= cfg.scales; ++j)
            for (int j2 = j + 1; j2 <= cfg.scales; ++j2)
                for (int q = 1; q <= cfg.moments; ++q) out.push_back({name, 2, j, j2, q});
    }
    return out;
}

std::vector<double> moment_summary(std::span<const double> v, int count, moment_mode mode) {
    if (v.empty()) throw empty_vector("moment summary of an empty vector");
    if (count < 1) throw dimension_mismatch("moment count must be >= 1");

    std::vector<double> out(count, 0.0);
    const double n = static_cast<double>(v.size());

    if (mode == moment_mode::unnormalized) {
        for (double x : v) {
            double p = x;
            for (int q = 0; q < count; ++q) {
                out[q] += p;
                p *= x;
            }
        }
        return out;
    }

    if (count > 4)
        throw dimension_mismatch("standardized statistics are defined up to order 4");
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    out[0] = mean;
    if (count >= 2) out[1] = m2;
    const bool flat = m2 < 1e-24;
    if (count >= 3) out[2] = flat ? 0.0 : m3 / std::pow(m2, 1.5);
    if (count >= 4) out[3] = flat ? 0.0 : m4 / (m2 * m2);
    return out;
}

namespace {

std::vector<double> magnitudes(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
    return out;
}

} // namespace

std::vector<double> scatter_signal(const graph& g, std::span<const double> x,
                                   const scattering_config& cfg) {
    std::vector<double> out;
    out.reserve(cfg.per_signal_size());

    auto append = [&](std::span<const double> v) {
        auto m = moment_summary(v, cfg.moments, cfg.mode);
        out.insert(out.end(), m.begin(), m.end());
    };

    append(x);

    auto first = wavelet_transform(g, x, cfg.scales);
    std::vector<std::vector<double>> first_mag(cfg.scales);
    for (int j = 1; j <= cfg.scales; ++j) {
        first_mag[j - 1] = magnitudes(first.bands[j - 1]);
        append(first_mag[j - 1]);
    }

    for (int j = 1; j <= cfg.scales; ++j) {
        if (j == cfg.scales) break; // no coarser partner scale
        auto second = wavelet_transform(g, first_mag[j - 1], cfg.scales);
        for (int j2 = j + 1; j2 <= cfg.scales; ++j2)
            append(magnitudes(second.bands[j2 - 1]));
    }
    return out;
}

scattering_features scatter_graph(const graph& g, const signal_set& signals,
                                  const scattering_config& cfg) {
    scattering_features out;
    out.layout = feature_layout(cfg);
    out.values.reserve(cfg.total_size());
    for (const auto& name : cfg.signal_names) {
        const auto& x = signals.at(name); // throws missing_signal
        if (static_cast<int>(x.size()) != g.num_vertices())
            throw dimension_mismatch("signal '" + name + "' has length " +
                                     std::to_string(x.size()) + ", expected " +
                                     std::to_string(g.num_vertices()));
        auto block = scatter_signal(g, x, cfg);
        out.values.insert(out.values.end(), block.begin(), block.end());
    }
    return out;
}

} // namespace gscat
