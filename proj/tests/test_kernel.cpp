#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracbq/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace fracbq;

namespace {

double radius(const std::array<double, 3>& x) {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

// max |values - oracle(r)| / max |oracle(r)|
double relative_sup_error(const KernelSample& ks, double (*oracle)(int, double, double), int dim) {
    double worst = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < ks.points.size(); ++i) {
        const double ref = oracle(dim, ks.t, radius(ks.points[i]));
        worst = std::max(worst, std::abs(ks.values[i] - ref));
        peak = std::max(peak, std::abs(ref));
    }
    return worst / peak;
}

double discrete_lp_norm(const KernelSample& ks, double spacing, int dim, double p) {
    double sum = 0.0;
    for (double v : ks.values) sum += std::pow(std::abs(v), p);
    return std::pow(sum * std::pow(spacing, dim), 1.0 / p);
}

} // namespace

TEST_CASE("evaluation lattice sizing produces power of two shapes") {
    const KernelGrid kg =
        KernelGrid::auto_size(2, 1.5, 0.5, 0.0, {{{1.0, 1.0, 0.0}}});
    CHECK(kg.n >= 256);
    CHECK((kg.n & (kg.n - 1)) == 0);
    const double l2 = std::log2(kg.side);
    CHECK(l2 == doctest::Approx(std::round(l2)).epsilon(1e-12));
    CHECK(kg.side >= 16.0);
}

TEST_CASE("alpha = 2 kernel matches the gaussian closed form") {
    const double t = 0.25;
    const MultiplierSpec unit = power_symbol(0.0, ZeroModePolicy::Identity);
    const KernelGrid kg = KernelGrid::auto_size(2, 2.0, t, 0.0, {{{2.0, 2.0, 0.0}}});
    // points on the evaluation lattice ride a single inverse FFT
    const auto pts = centered_point_grid(2, 96, kg.side / kg.n);
    const KernelSample ks = kernel_physical(unit, 2, 2.0, t, pts, kg);
    CHECK(relative_sup_error(ks, gaussian_heat_kernel, 2) < 1e-6);
}

TEST_CASE("alpha = 1 kernel matches the poisson closed form") {
    const double t = 0.25;
    const MultiplierSpec unit = power_symbol(0.0, ZeroModePolicy::Identity);
    const KernelGrid kg = KernelGrid::auto_size(2, 1.0, t, 0.0, {{{2.0, 2.0, 0.0}}});
    const auto pts = centered_point_grid(2, 96, kg.side / kg.n);
    const KernelSample ks = kernel_physical(unit, 2, 1.0, t, pts, kg);
    CHECK(relative_sup_error(ks, poisson_kernel, 2) < 1e-6);
}

TEST_CASE("closed form oracles have the right normalization at the origin") {
    CHECK(gaussian_heat_kernel(2, 0.25, 0.0) == doctest::Approx(1.0 / 3.14159265358979323846).epsilon(1e-14));
    CHECK(poisson_kernel(2, 1.0, 0.0) == doctest::Approx(1.0 / (2.0 * 3.14159265358979323846)).epsilon(1e-13));
    // poisson in 3d integrates to one as well; spot check the peak value
    CHECK(poisson_kernel(3, 1.0, 0.0) == doctest::Approx(1.0 / (3.14159265358979323846 * 3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("kernel rescales self-similarly in time") {
    const double alpha = 1.5;
    const double t = 4.0;
    const MultiplierSpec unit = power_symbol(0.0, ZeroModePolicy::Identity);

    const KernelGrid kg1 = KernelGrid::auto_size(2, alpha, 1.0, 0.0, {{{2.0, 2.0, 0.0}}});
    const auto base = centered_point_grid(2, 9, kg1.side / kg1.n * 16.0);
    const KernelSample ref = kernel_physical(unit, 2, alpha, 1.0, base, kg1);

    const double stretch = std::pow(t, 1.0 / alpha);
    std::vector<std::array<double, 3>> scaled = base;
    for (auto& x : scaled)
        for (double& c : x) c *= stretch;
    const KernelSample moved = kernel_physical(unit, 2, alpha, t, scaled);

    const double pre = std::pow(t, 2.0 / alpha);
    double peak = 0.0;
    for (double v : ref.values) peak = std::max(peak, std::abs(v));
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(std::abs(pre * moved.values[i] - ref.values[i]) < 1e-6 * peak);
    }
}

TEST_CASE("kernel lp norm decays with the predicted power of t") {
    const double alpha = 1.5;
    const double p = 2.0;
    const MultiplierSpec unit = power_symbol(0.0, ZeroModePolicy::Identity);
    std::vector<double> ts = {1.0, 4.0};
    std::vector<double> norms;
    for (double t : ts) {
        const KernelGrid kg = KernelGrid::auto_size(2, alpha, t, 0.0, {{{0.0, 0.0, 0.0}}});
        const double h = kg.side / kg.n;
        const auto pts = centered_point_grid(2, 512, h);
        const KernelSample ks = kernel_physical(unit, 2, alpha, t, pts, kg);
        norms.push_back(discrete_lp_norm(ks, h, 2, p));
    }
    const double slope = std::log(norms[1] / norms[0]) / std::log(ts[1] / ts[0]);
    const double predicted = -(0.0 + 2.0 * (1.0 - 1.0 / p)) / alpha;
    CHECK(std::abs(slope - predicted) < 0.02 * std::abs(predicted));
}

TEST_CASE("kernel is positive where it matters") {
    const MultiplierSpec unit = power_symbol(0.0, ZeroModePolicy::Identity);
    const KernelGrid kg = KernelGrid::auto_size(2, 1.5, 1.0, 0.0, {{{4.0, 4.0, 0.0}}});
    const auto pts = centered_point_grid(2, 33, kg.side / kg.n * 8.0);
    const KernelSample ks = kernel_physical(unit, 2, 1.5, 1.0, pts, kg);
    double peak = 0.0;
    for (double v : ks.values) peak = std::max(peak, v);
    for (double v : ks.values) CHECK(v > -1e-8 * peak);
    CHECK(peak > 0.0);
}

TEST_CASE("kernel evaluation validates its arguments") {
    const MultiplierSpec unit = power_symbol(0.0, ZeroModePolicy::Identity);
    const std::vector<std::array<double, 3>> pts = {{{0.0, 0.0, 0.0}}};
    CHECK_THROWS_AS(kernel_physical(unit, 2, 1.5, 0.0, pts), std::invalid_argument);
    CHECK_THROWS_AS(kernel_physical(unit, 2, 1.5, -1.0, pts), std::invalid_argument);
    CHECK_THROWS_AS(kernel_physical(unit, 2, 0.9, 1.0, pts), std::invalid_argument);
    CHECK_THROWS_AS(kernel_physical(unit, 2, 2.1, 1.0, pts), std::invalid_argument);
    CHECK_THROWS_AS(kernel_physical(unit, 2, 1.5, 1.0, {}), std::invalid_argument);
}

TEST_CASE("kernel csv report carries one row per point") {
    const MultiplierSpec unit = power_symbol(0.0, ZeroModePolicy::Identity);
    const KernelGrid kg = KernelGrid::auto_size(2, 1.5, 1.0, 0.0, {{{1.0, 1.0, 0.0}}});
    const auto pts = centered_point_grid(2, 5, kg.side / kg.n);
    const KernelSample ks = kernel_physical(unit, 2, 1.5, 1.0, pts, kg);

    const std::string path = "test_kernel_report.csv";
    write_kernel_csv(path, {ks}, 2);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.find("t") != std::string::npos);
    CHECK(line.find("value") != std::string::npos);
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 25);
    in.close();
    std::remove(path.c_str());
}
