#pragma once

#include <span>
#include <vector>

#include "gscat/graph.hpp"

namespace gscat {

// Band-pass stack for one signal: bands[j-1] holds the difference of lazy-walk
// powers P^{2^{j-1}} x - P^{2^j} x, plus the final low-pass residual P^{2^J} x.
struct wavelet_coefficients {
    int scales = 0;
    std::vector<std::vector<double>> bands;
    std::vector<double> lowpass;
};

// Dyadic trajectory [P^{2^j} x : j = 0..J], computed with 2^J cumulative
// sparse applications; powers are never materialized as matrices.
std::vector<std::vector<double>> dyadic_diffusion(const graph& g,
                                                  std::span<const double> x,
                                                  int scales);

wavelet_coefficients wavelet_transform(const graph& g, std::span<const double> x,
                                       int scales);

} // namespace gscat
