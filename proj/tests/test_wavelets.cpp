#include <doctest.h>

#include <cmath>

#include "gscat/wavelets.hpp"
#include "support/oracles.hpp"

using namespace gscat;
using namespace gscat_test;

namespace {

double l1_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

} // namespace

TEST_SUITE("diffusion_wavelets") {

TEST_CASE("dyadic trajectory is idempotent on an edge") {
    auto g = build_graph(2, std::vector<weighted_edge>{{0, 1, 1.0}});
    std::vector<double> x{1.0, 0.0};
    auto powers = dyadic_diffusion(g, x, 2);
    REQUIRE(powers.size() == 3);
    for (const auto& p : powers) {
        CHECK(p[0] == doctest::Approx(0.5));
        CHECK(p[1] == doctest::Approx(0.5));
    }
}

TEST_CASE("dyadic trajectory fixes the degree vector") {
    auto rng = make_rng(23, "dyadic-degree");
    auto g = random_connected_graph(12, 0.25, rng);
    auto powers = dyadic_diffusion(g, g.degree_vector(), 5);
    REQUIRE(powers.size() == 6);
    for (const auto& p : powers)
        for (int v = 0; v < g.num_vertices(); ++v)
            CHECK(p[v] == doctest::Approx(g.degree(v)).epsilon(1e-12));
}

TEST_CASE("dyadic trajectory matches dense matrix powers on a path") {
    std::vector<weighted_edge> edges;
    for (int v = 0; v + 1 < 5; ++v) edges.push_back({v, v + 1, 1.0});
    auto g = build_graph(5, edges);
    auto rng = make_rng(29, "dyadic-path");
    auto x = random_signal(5, rng);

    auto powers = dyadic_diffusion(g, x, 3);
    auto walk = dense_lazy_walk(g);
    Eigen::VectorXd xe = Eigen::Map<const Eigen::VectorXd>(x.data(), 5);
    for (int j = 0; j <= 3; ++j) {
        Eigen::VectorXd expect = dense_power(walk, 1l << j) * xe;
        for (int v = 0; v < 5; ++v) CHECK(std::abs(powers[j][v] - expect(v)) <= 1e-10);
    }
}

TEST_CASE("dyadic diffusion validates arguments") {
    auto g = build_graph(2, std::vector<weighted_edge>{{0, 1, 1.0}});
    std::vector<double> x{1.0, 0.0};
    CHECK_THROWS_AS(dyadic_diffusion(g, x, 0), dimension_mismatch);
    std::vector<double> bad{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(dyadic_diffusion(g, bad, 2), dimension_mismatch);
}

TEST_CASE("bands annihilate the degree vector") {
    auto rng = make_rng(31, "band-degree");
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_connected_graph(5 + trial, 0.3, rng, trial % 2 == 1);
        auto coeffs = wavelet_transform(g, g.degree_vector(), 4);
        for (const auto& band : coeffs.bands)
            for (double value : band) CHECK(std::abs(value) <= 1e-10);
    }
}

TEST_CASE("all bands vanish on a single edge") {
    auto g = build_graph(2, std::vector<weighted_edge>{{0, 1, 1.0}});
    auto rng = make_rng(37, "k2-bands");
    auto x = random_signal(2, rng);
    auto coeffs = wavelet_transform(g, x, 3);
    for (const auto& band : coeffs.bands)
        for (double value : band) CHECK(std::abs(value) <= 1e-15);
}

TEST_CASE("first band of a delta on the triangle") {
    auto g = build_graph(3, std::vector<weighted_edge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    std::vector<double> x{1.0, 0.0, 0.0};
    auto coeffs = wavelet_transform(g, x, 1);
    CHECK(coeffs.bands[0][0] == doctest::Approx(0.125));
    CHECK(coeffs.bands[0][1] == doctest::Approx(-0.0625));
    CHECK(coeffs.bands[0][2] == doctest::Approx(-0.0625));
}

TEST_CASE("bands sum to zero and telescope") {
    auto rng = make_rng(41, "band-telescope");
    for (int trial = 0; trial < 15; ++trial) {
        auto g = random_connected_graph(4 + trial, 0.3, rng);
        const int n = g.num_vertices();
        auto x = random_signal(n, rng);
        const int scales = 4;
        auto coeffs = wavelet_transform(g, x, scales);
        const double budget = 1e-9 * l1_norm(x);
        for (const auto& band : coeffs.bands) {
            double total = 0.0;
            for (double value : band) total += value;
            CHECK(std::abs(total) <= budget);
        }
        // sum of all bands equals P x - P^{2^J} x
        auto px = apply_lazy_walk(g, x);
        for (int v = 0; v < n; ++v) {
            double stacked = 0.0;
            for (const auto& band : coeffs.bands) stacked += band[v];
            CHECK(std::abs(stacked - (px[v] - coeffs.lowpass[v])) <= 1e-10);
        }
    }
}

TEST_CASE("sparse pipeline matches dense operators up to n=20") {
    auto rng = make_rng(43, "band-oracle");
    for (int n = 2; n <= 20; ++n) {
        auto g = random_connected_graph(n, 0.3, rng, n % 2 == 0);
        auto x = random_signal(n, rng);
        const int scales = 4;
        auto coeffs = wavelet_transform(g, x, scales);
        Eigen::VectorXd xe = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
        auto expect = dense_wavelet_bands(g, xe, scales);
        for (int j = 0; j < scales; ++j)
            for (int v = 0; v < n; ++v)
                CHECK(std::abs(coeffs.bands[j][v] - expect[j](v)) <= 1e-10);
    }
}

TEST_CASE("transform is equivariant to vertex relabeling") {
    auto rng = make_rng(47, "band-equivariance");
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_connected_graph(6 + trial, 0.3, rng);
        const int n = g.num_vertices();
        auto x = random_signal(n, rng);
        auto perm = random_permutation(n, rng);

        auto direct = wavelet_transform(g, x, 3);
        auto relabeled = wavelet_transform(permute_graph(g, perm), permute_signal(x, perm), 3);
        for (int j = 0; j < 3; ++j)
            for (int v = 0; v < n; ++v)
                CHECK(std::abs(direct.bands[j][v] - relabeled.bands[j][perm[v]]) <= 1e-12);
    }
}

} // TEST_SUITE
