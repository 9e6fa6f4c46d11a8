#include "gscat/wavelets.hpp"

#include <string>
#include <utility>

namespace gscat {

std::vector<std::vector<double>> dyadic_diffusion(const graph& g,
                                                  std::span<const double> x,
                                                  int scales) {
    if (scales < 1)
        throw dimension_mismatch("scale count must be >= 1, got " + std::to_string(scales));
    if (static_cast<int>(x.size()) != g.num_vertices())
        throw dimension_mismatch("signal length " + std::to_string(x.size()) +
                                 " does not match vertex count " +
                                 std::to_string(g.num_vertices()));

    std::vector<std::vector<double>> powers;
    powers.reserve(scales + 1);

    std::vector<double> cur(x.begin(), x.end());
    std::vector<double> next(cur.size());
    long long step = 0;
    for (int j = 0; j <= scales; ++j) {
        const long long target = 1ll << j;
        while (step < target) {
            apply_lazy_walk(g, cur, next);
            cur.swap(next);
            ++step;
        }
        powers.push_back(cur);
    }
    return powers;
}

wavelet_coefficients wavelet_transform(const graph& g, std::span<const double> x,
                                       int scales) {
    auto powers = dyadic_diffusion(g, x, scales);
    wavelet_coefficients out;
    out.scales = scales;
    out.bands.resize(scales);
    const int n = g.num_vertices();
    for (int j = 1; j <= scales; ++j) {
        auto& band = out.bands[j - 1];
        band.resize(n);
        const auto& coarse = powers[j];
        const auto& fine = powers[j - 1];
        for (int v = 0; v < n; ++v) band[v] = fine[v] - coarse[v];
    }
    out.lowpass = std::move(powers.back());
    return out;
}

} // namespace gscat
