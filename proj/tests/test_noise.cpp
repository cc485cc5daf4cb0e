#include "doctest.h"

#include <cmath>
#include <numbers>

#include "collapse/noise.hpp"
#include "stat_utils.hpp"

using namespace collapse;

namespace {
const Grid1D kGrid(-8.0, 8.0, 64);  // dx = 0.25
}

TEST_CASE("noise spec validation") {
    CHECK_THROWS_AS(NoiseSpec::white(kGrid, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(NoiseSpec::exponential(0.0, kGrid, 0.1, 1), std::invalid_argument);
}

TEST_CASE("white noise: zero mean and 1/(dx dt) cell variance") {
    const double dt = 0.02;
    NoiseField field(NoiseSpec::white(kGrid, dt, 99));
    const int steps = 20000;  // 64 cells -> 1.28e6 draws

    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < steps; ++s) {
        const auto& slice = field.next_slice();
        for (double v : slice) {
            sum += v;
            sum_sq += v * v;
        }
    }
    const double n = static_cast<double>(steps) * kGrid.n_points;
    const double target_var = 1.0 / (kGrid.dx() * dt);
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;

    // E[w] = 0 within 4 standard errors of the mean estimator.
    CHECK(std::abs(mean) < 4.0 * std::sqrt(target_var / n));
    CHECK(var == doctest::Approx(target_var).epsilon(0.01));
}

TEST_CASE("white noise marginals pass KS against the scaled normal") {
    const double dt = 0.5;
    NoiseField field(NoiseSpec::white(kGrid, dt, 5));
    std::vector<double> samples;
    samples.reserve(100000);
    const double sigma = 1.0 / std::sqrt(kGrid.dx() * dt);
    while (samples.size() < 100000) {
        const auto& slice = field.next_slice();
        for (double v : slice) samples.push_back(v / sigma);
    }
    samples.resize(100000);
    CHECK(oracle::ks_passes(samples, oracle::normal_cdf, 0.01));
}

TEST_CASE("exponential noise: stationary OU autocovariance") {
    const double omega_c = 2.0, dt = 0.125;
    NoiseField field(NoiseSpec::exponential(omega_c, kGrid, dt, 17));
    const int steps = 16384;  // ~1e6 samples over 64 independent cells

    std::vector<double> data(static_cast<std::size_t>(kGrid.n_points) * steps);
    for (int s = 0; s < steps; ++s) {
        const auto& slice = field.next_slice();
        for (int c = 0; c < kGrid.n_points; ++c)
            data[static_cast<std::size_t>(c) * steps + s] = slice[c];
    }

    // Lag-n autocovariance vs (omega_c/2) exp(-omega_c n dt) / dx, lags to 5/omega_c.
    const double scale = 0.5 * omega_c / kGrid.dx();
    const int max_lag = static_cast<int>(5.0 / omega_c / dt);
    const double c0 = oracle::autocovariance(data, kGrid.n_points, steps, 0);
    CHECK(c0 == doctest::Approx(scale).epsilon(0.05));
    for (int lag = 1; lag <= max_lag; ++lag) {
        const double c = oracle::autocovariance(data, kGrid.n_points, steps, lag);
        const double expected = std::exp(-omega_c * lag * dt);
        CHECK(std::abs(c / c0 - expected) < 0.05);
    }
}

TEST_CASE("white limit: integrated OU increments reach white variance at omega_c dt >= 100") {
    // Integrate the colored stream at fine resolution delta over windows of
    // length T_w with omega_c T_w = 100; compare to the white value T_w/dx.
    const double omega_c = 1.0, delta = 0.2, window = 100.0;
    const int substeps = static_cast<int>(window / delta);  // 500
    const Grid1D grid(-4.0, 4.0, 16);
    NoiseField field(NoiseSpec::exponential(omega_c, grid, delta, 23));

    const int windows_per_cell = 2500;  // 16 cells -> 40000 windows, 2e7 draws
    std::vector<double> sums(static_cast<std::size_t>(grid.n_points) * windows_per_cell, 0.0);
    for (int w = 0; w < windows_per_cell; ++w) {
        for (int s = 0; s < substeps; ++s) {
            const auto& slice = field.next_slice();
            for (int c = 0; c < grid.n_points; ++c)
                sums[static_cast<std::size_t>(c) * windows_per_cell + w] += slice[c] * delta;
        }
    }
    const double white_var = window / grid.dx();
    CHECK(oracle::variance(sums) == doctest::Approx(white_var).epsilon(0.02));
}

TEST_CASE("reproducibility: same seed and spec give bit-identical streams") {
    const NoiseSpec spec = NoiseSpec::exponential(3.0, kGrid, 0.05, 321);
    NoiseField a(spec, 4), b(spec, 4);
    for (int s = 0; s < 50; ++s) {
        const auto& sa = a.next_slice();
        const auto& sb = b.next_slice();
        for (int c = 0; c < kGrid.n_points; ++c) CHECK(sa[c] == sb[c]);
    }
}

TEST_CASE("colored_time_correlation: peak, symmetry, unit time integral") {
    const double omega_c = 4.0;
    CHECK(colored_time_correlation(2.0, 2.0, omega_c) == doctest::Approx(omega_c / 2.0));
    CHECK(colored_time_correlation(1.0, 3.5, omega_c) ==
          colored_time_correlation(3.5, 1.0, omega_c));

    // Quadrature of f(t, s) over s recovers the white normalization.
    const double integral = oracle::simpson(
        [&](double s) { return colored_time_correlation(0.0, s, omega_c); }, -20.0, 20.0, 200000);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("smear: delta input reproduces the g1 kernel") {
    const Grid1D g(-8.0, 8.0, 256);
    const double r_c = 1.0;
    std::vector<double> input(g.n_points, 0.0);
    const int hot = g.n_points / 2;  // x = 0
    input[hot] = 1.0 / g.dx();       // discrete delta

    const std::vector<double> out = smear(input, g, r_c);
    const double amp = std::pow(std::numbers::pi * r_c * r_c, -0.25);
    double max_err = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double x = g.x(j);
        max_err = std::max(max_err, std::abs(out[j] - amp * std::exp(-x * x / (2.0 * r_c * r_c))));
    }
    CHECK(max_err < 1e-8);
}

TEST_CASE("smear: constant input scales by the kernel integral") {
    const Grid1D g(-8.0, 8.0, 128);
    const double r_c = 0.8;
    const std::vector<double> input(g.n_points, 2.0);
    const std::vector<double> out = smear(input, g, r_c);

    const double amp = std::pow(std::numbers::pi * r_c * r_c, -0.25);
    const double kernel_integral = oracle::simpson(
        [&](double x) { return amp * std::exp(-x * x / (2.0 * r_c * r_c)); }, -8.0, 8.0, 20000);
    for (double v : out) CHECK(v == doctest::Approx(2.0 * kernel_integral).epsilon(1e-10));
}

TEST_CASE("smear is exactly linear") {
    const Grid1D g(-8.0, 8.0, 64);
    Smearer s(g, 1.0);
    RngStream rng(9, 0);
    std::vector<double> a(g.n_points), b(g.n_points), ab(g.n_points);
    for (int j = 0; j < g.n_points; ++j) {
        a[j] = rng.normal();
        b[j] = rng.normal();
        ab[j] = a[j] + b[j];
    }
    const auto sa = s.apply(a), sb = s.apply(b), sab = s.apply(ab);
    for (int j = 0; j < g.n_points; ++j)
        CHECK(std::abs(sab[j] - (sa[j] + sb[j])) < 1e-12);
}

TEST_CASE("smear rejects r_c below the grid spacing") {
    const Grid1D g(-8.0, 8.0, 64);  // dx = 0.25
    std::vector<double> input(g.n_points, 1.0);
    CHECK_THROWS_AS(smear(input, g, 0.1), std::invalid_argument);
}
