#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracbq/datagen.hpp"
#include "fracbq/operators.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

using namespace fracbq;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField sample_2d(const SpectralGrid& g, const std::function<double(double, double)>& f) {
    ScalarField out(g);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const auto x = g.coordinate(i);
        out.samples[i] = f(x[0], x[1]);
    }
    return out;
}

double max_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
    return m;
}

double max_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, max_diff(a[c], b[c]));
    return m;
}

VectorField random_vector(const SpectralGrid& g, unsigned seed) {
    VectorField v(g);
    for (int c = 0; c < g.dim(); ++c)
        v[c] = make_test_scalar(g, TestFieldKind::RandomBandlimited, seed + 31u * c);
    return v;
}

} // namespace

TEST_CASE("fractional laplacian acts as the symbol |k|^alpha on pure modes") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    const ScalarField f = sample_2d(g, [](double x, double) { return std::cos(2.0 * x); });
    const ScalarField lf = fractional_laplacian(f, 1.5);
    const double lam = std::pow(2.0, 1.5);
    const ScalarField ref = sample_2d(g, [lam](double x, double) { return lam * std::cos(2.0 * x); });
    CHECK(max_diff(lf, ref) < 1e-12);

    // alpha = 2 reduces to minus the laplacian
    const ScalarField mix = sample_2d(g, [](double x, double y) { return std::sin(x + 2.0 * y); });
    const ScalarField l2 = fractional_laplacian(mix, 2.0);
    const ScalarField ref2 =
        sample_2d(g, [](double x, double y) { return 5.0 * std::sin(x + 2.0 * y); });
    CHECK(max_diff(l2, ref2) < 1e-11);
}

TEST_CASE("heat propagation damps each mode by exp(-t |k|^alpha)") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    const double alpha = 1.5;
    const ScalarField f =
        sample_2d(g, [](double x, double y) { return std::cos(x) + 0.5 * std::sin(3.0 * y); });
    const double t = 0.7;
    const ScalarField ht = heat_propagate(f, t, alpha);
    const ScalarField ref = sample_2d(g, [&](double x, double y) {
        return std::exp(-t) * std::cos(x) +
               0.5 * std::exp(-t * std::pow(3.0, alpha)) * std::sin(3.0 * y);
    });
    CHECK(max_diff(ht, ref) < 1e-13);
}

TEST_CASE("heat propagation at t = 0 is the identity and validates arguments") {
    const SpectralGrid g = make_grid(2, 16, 2.0 * kPi);
    const ScalarField f = make_test_scalar(g, TestFieldKind::MultiMode, 3);
    CHECK(max_diff(heat_propagate(f, 0.0, 1.3), f) < 1e-13);
    CHECK_THROWS_AS(heat_propagate(f, -0.1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(heat_propagate(f, 0.1, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(heat_propagate(f, 0.1, 2.1), std::invalid_argument);
}

TEST_CASE("heat semigroup composes exactly") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    const VectorField v = random_vector(g, 77);
    for (double alpha : {1.0, 1.5, 2.0}) {
        const VectorField two_steps = heat_propagate(heat_propagate(v, 0.3, alpha), 0.45, alpha);
        const VectorField one_step = heat_propagate(v, 0.75, alpha);
        CHECK(max_diff(two_steps, one_step) < 1e-12);
    }
}

TEST_CASE("leray projection of a known shear plus gradient splits correctly") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    // (sin(x+y), 0) = divergence free part (s/2, -s/2) plus gradient part
    VectorField v(g);
    v[0] = sample_2d(g, [](double x, double y) { return std::sin(x + y); });
    const VectorField pv = leray_project(v);
    const ScalarField half = sample_2d(g, [](double x, double y) { return 0.5 * std::sin(x + y); });
    ScalarField minus_half = half;
    scale(minus_half, -1.0);
    CHECK(max_diff(pv[0], half) < 1e-13);
    CHECK(max_diff(pv[1], minus_half) < 1e-13);
}

TEST_CASE("leray projection kills gradients and fixes divergence free fields") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    const ScalarField phi = make_test_scalar(g, TestFieldKind::MultiMode, 9);
    const VectorField grad_phi = gradient(phi);
    CHECK(max_abs(leray_project(grad_phi)) < 1e-12);

    const VectorField u = make_divergence_free_velocity(g, TestFieldKind::RandomBandlimited, 4);
    CHECK(max_diff(leray_project(u), u) < 1e-12);
}

TEST_CASE("leray projection is idempotent and produces divergence free output") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    for (unsigned seed = 0; seed < 10; ++seed) {
        const VectorField v = random_vector(g, 100 + seed);
        const VectorField pv = leray_project(v);
        CHECK(max_diff(leray_project(pv), pv) < 1e-12);
        CHECK(max_abs(divergence(pv)) < 1e-11);
    }
}

TEST_CASE("leray projection leaves the mean mode alone") {
    const SpectralGrid g = make_grid(2, 16, 2.0 * kPi);
    VectorField v = random_vector(g, 8);
    for (double& s : v[0].samples) s += 3.25;
    const VectorField pv = leray_project(v);
    CHECK(mean(pv[0]) == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("projection and heat flow commute") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    const VectorField v = random_vector(g, 55);
    const VectorField a = leray_project(heat_propagate(v, 0.4, 1.5));
    const VectorField b = heat_propagate(leray_project(v), 0.4, 1.5);
    CHECK(max_diff(a, b) < 1e-12);
}

TEST_CASE("riesz smoothing divides pure modes by |k|^gamma") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    const ScalarField f = sample_2d(g, [](double x, double) { return std::cos(2.0 * x); });
    const ScalarField sm = riesz_smoothing(f, 0.5);
    const double fac = std::pow(2.0, -0.5);
    const ScalarField ref = sample_2d(g, [fac](double x, double) { return fac * std::cos(2.0 * x); });
    CHECK(max_diff(sm, ref) < 1e-13);
}

TEST_CASE("riesz smoothing rejects fields with a mean") {
    const SpectralGrid g = make_grid(2, 16, 2.0 * kPi);
    ScalarField f = sample_2d(g, [](double x, double) { return 1.0 + std::cos(x); });
    CHECK_THROWS_AS(riesz_smoothing(f, 0.5), std::invalid_argument);
}

TEST_CASE("power symbol honors the zero mode policy") {
    const SpectralGrid g = make_grid(2, 16, 2.0 * kPi);
    const ScalarField f = sample_2d(g, [](double x, double) { return 2.0 + std::cos(x); });
    Spectrum s = forward_transform(f);
    Spectrum z = s;
    apply_multiplier_inplace(s, power_symbol(0.0, ZeroModePolicy::Identity));
    CHECK(std::abs(s.modes[0].real() - 2.0) < 1e-13);
    apply_multiplier_inplace(z, power_symbol(0.0, ZeroModePolicy::Zero));
    CHECK(std::abs(z.modes[0]) == 0.0);
    // away from zero both act as |k|^0 = 1
    CHECK(std::abs(s.modes[1] - z.modes[1]) < 1e-14);
}

TEST_CASE("projected divergence symbol matches k_j k_l k_m / |k|^2 on a mode") {
    const SpectralGrid g = make_grid(2, 16, 2.0 * kPi);
    Spectrum s(g);
    const std::size_t at = g.flatten({1, 2, 0}); // wavevector (1, 2)
    s.modes[at] = {1.0, 0.0};
    s.modes[0] = {5.0, 0.0};
    apply_multiplier_inplace(s, projected_divergence_symbol(0, 1, 1));
    CHECK(s.modes[at].real() == doctest::Approx(0.8).epsilon(1e-14)); // 1*2*2/5
    CHECK(std::abs(s.modes[0]) == 0.0); // zero mode policy is Zero
}

TEST_CASE("tensor divergence of the canonical shear vanishes") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    VectorField u(g);
    u[0] = sample_2d(g, [](double, double y) { return std::sin(y); });
    CHECK(max_abs(tensor_divergence(u, u)) < 1e-13);
}

TEST_CASE("tensor divergence of crossed shears has a closed form") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    VectorField u(g), v(g);
    u[0] = sample_2d(g, [](double, double y) { return std::sin(y); });
    v[1] = sample_2d(g, [](double x, double) { return std::sin(x); });
    // component i of div(u (x) v) is sum_j d_j(u_i v_j); only (i,j) = (0,1)
    // survives and gives d_y(sin y sin x)
    const VectorField dv = tensor_divergence(u, v);
    const ScalarField ref = sample_2d(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
    CHECK(max_diff(dv[0], ref) < 1e-12);
    CHECK(max_abs(dv[1]) < 1e-13);
}

TEST_CASE("quadratic products above the dealias cutoff are removed") {
    const SpectralGrid g = make_grid(2, 16, 2.0 * kPi);
    // cutoff is 5, so cos(5x)^2 = 1/2 + cos(10x)/2 keeps only its mean and
    // the divergence comes out identically zero
    VectorField u(g);
    u[0] = sample_2d(g, [](double x, double) { return std::cos(5.0 * x); });
    CHECK(dealias_cutoff(g) == 5);
    CHECK(max_abs(tensor_divergence(u, u)) < 1e-13);
}

TEST_CASE("scalar flux divergence has the expected closed form") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    const ScalarField theta = sample_2d(g, [](double x, double) { return std::sin(x); });
    VectorField u(g);
    u[0] = sample_2d(g, [](double, double y) { return std::sin(y); });
    const ScalarField out = scalar_flux_divergence(theta, u);
    const ScalarField ref = sample_2d(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
    CHECK(max_diff(out, ref) < 1e-12);
}

TEST_CASE("pressure balances pure buoyancy") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    VectorField u(g);
    VectorField f(g);
    const ScalarField theta = sample_2d(g, [](double, double y) { return std::sin(y); });
    const ScalarField p = pressure_from_state(u, theta, f);
    const ScalarField ref = sample_2d(g, [](double, double y) { return -std::cos(y); });
    CHECK(max_diff(p, ref) < 1e-12);
}

TEST_CASE("pressure of a pure shear flow is zero") {
    const SpectralGrid g = make_grid(2, 32, 2.0 * kPi);
    VectorField u(g);
    u[0] = sample_2d(g, [](double, double y) { return std::sin(y); });
    VectorField f(g);
    ScalarField theta(g);
    CHECK(max_abs(pressure_from_state(u, theta, f)) < 1e-13);
}

TEST_CASE("divergence free construction helper delivers on its name") {
    for (int d : {2, 3}) {
        const SpectralGrid g = make_grid(d, 16, 2.0 * kPi);
        const VectorField u = make_divergence_free_velocity(g, TestFieldKind::MultiMode, 12, 1.0);
        CHECK(max_abs(u) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(max_abs(divergence(u)) < 1e-11);
    }
    const SpectralGrid g1 = make_grid(1, 16, 2.0 * kPi);
    CHECK_THROWS_AS(make_divergence_free_velocity(g1, TestFieldKind::MultiMode, 1), std::invalid_argument);
}
