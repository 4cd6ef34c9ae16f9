#include "fracbq/datagen.hpp"

#include "fracbq/transform.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fracbq {
namespace {

double min_image(double delta, double L) {
    delta = std::fmod(delta, L);
    if (delta < 0.0) delta += L;
    return std::min(delta, L - delta);
}

void bandlimit_inplace(ScalarField& f) {
    Spectrum s = forward_transform(f);
    dealias_inplace(s);
    f = inverse_transform(s);
}

void finalize(ScalarField& f, double amplitude) {
    bandlimit_inplace(f);
    const double mu = mean(f);
    for (auto& v : f.samples) v -= mu;
    const double m = max_abs(f);
    if (m > 0.0) scale(f, amplitude / m);
}

ScalarField gaussian_bump(const SpectralGrid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double L = g.side();
    std::array<double, 3> center{};
    for (int a = 0; a < g.dim(); ++a) center[static_cast<std::size_t>(a)] = L * unif(rng);
    const double width = L * (1.0 / 16.0 + unif(rng) / 8.0);
    ScalarField f(g);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const auto x = g.coordinate(i);
        double r2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const double da =
                min_image(x[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)], L);
            r2 += da * da;
        }
        f.samples[i] = std::exp(-r2 / (2.0 * width * width));
    }
    return f;
}

ScalarField multi_mode(const SpectralGrid& g, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> mode(-4, 4);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> amp(0.0, 1.0);
    ScalarField f(g);
    const double k0 = 2.0 * std::numbers::pi / g.side();
    for (int term = 0; term < 5; ++term) {
        std::array<double, 3> k{};
        bool nonzero = false;
        for (int a = 0; a < g.dim(); ++a) {
            k[static_cast<std::size_t>(a)] = k0 * mode(rng);
            nonzero = nonzero || k[static_cast<std::size_t>(a)] != 0.0;
        }
        if (!nonzero) k[0] = k0;
        const double ph = phase(rng);
        const double c = amp(rng);
        for (std::size_t i = 0; i < f.samples.size(); ++i) {
            const auto x = g.coordinate(i);
            double dot = 0.0;
            for (int a = 0; a < g.dim(); ++a)
                dot += k[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
            f.samples[i] += c * std::cos(dot + ph);
        }
    }
    return f;
}

ScalarField random_bandlimited(const SpectralGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField f(g);
    for (auto& v : f.samples) v = gauss(rng);
    Spectrum s = forward_transform(f);
    const int cut = std::max(2, g.n() / 6);
    for (std::size_t i = 0; i < s.modes.size(); ++i) {
        const auto idx = g.unflatten(i);
        for (int a = 0; a < g.dim(); ++a)
            if (std::abs(g.freq_index(idx[static_cast<std::size_t>(a)])) > cut) {
                s.modes[i] = 0.0;
                break;
            }
    }
    return inverse_transform(s);
}

ScalarField raw_scalar(const SpectralGrid& g, TestFieldKind kind, std::mt19937_64& rng) {
    switch (kind) {
    case TestFieldKind::GaussianBump: return gaussian_bump(g, rng);
    case TestFieldKind::MultiMode: return multi_mode(g, rng);
    case TestFieldKind::RandomBandlimited: return random_bandlimited(g, rng);
    }
    throw std::invalid_argument("make_test_scalar: unknown kind");
}

} // namespace

ScalarField make_test_scalar(const SpectralGrid& g, TestFieldKind kind, unsigned seed,
                             double amplitude) {
    std::mt19937_64 rng(seed);
    ScalarField f = raw_scalar(g, kind, rng);
    finalize(f, amplitude);
    return f;
}

std::vector<ScalarField> make_test_family(const SpectralGrid& g, int count, unsigned seed,
                                          double amplitude) {
    if (count < 1) throw std::invalid_argument("make_test_family: count must be positive");
    std::vector<ScalarField> fam;
    fam.reserve(static_cast<std::size_t>(count));
    const TestFieldKind kinds[] = {TestFieldKind::GaussianBump, TestFieldKind::MultiMode,
                                   TestFieldKind::RandomBandlimited};
    for (int i = 0; i < count; ++i)
        fam.push_back(make_test_scalar(g, kinds[i % 3], seed + static_cast<unsigned>(i) * 977u,
                                       amplitude));
    return fam;
}

VectorField make_divergence_free_velocity(const SpectralGrid& g, TestFieldKind kind,
                                          unsigned seed, double amplitude) {
    const int d = g.dim();
    if (d < 2)
        throw std::invalid_argument(
            "make_divergence_free_velocity: needs d >= 2 (1d solenoidal fields are constant)");
    std::mt19937_64 rng(seed);
    VectorField u(g);
    if (d == 2) {
        ScalarField psi = raw_scalar(g, kind, rng);
        bandlimit_inplace(psi);
        u[0] = spectral_derivative(psi, 1);
        u[1] = spectral_derivative(psi, 0);
        scale(u[1], -1.0);
    } else {
        // u = curl A for a random potential A
        std::array<ScalarField, 3> A = {ScalarField(g), ScalarField(g), ScalarField(g)};
        for (auto& a : A) {
            a = raw_scalar(g, kind, rng);
            bandlimit_inplace(a);
        }
        u[0] = spectral_derivative(A[2], 1);
        axpy(-1.0, spectral_derivative(A[1], 2), u[0]);
        u[1] = spectral_derivative(A[0], 2);
        axpy(-1.0, spectral_derivative(A[2], 0), u[1]);
        u[2] = spectral_derivative(A[1], 0);
        axpy(-1.0, spectral_derivative(A[0], 1), u[2]);
    }
    const double m = max_abs(u);
    if (m > 0.0) scale(u, amplitude / m);
    return u;
}

BoussinesqData make_seeded_data(const SolverConfig& cfg, unsigned seed, double amp_u0,
                                double amp_theta0, double amp_force_u, double amp_force_theta) {
    const SpectralGrid g = solver_grid(cfg);
    const std::vector<double> times = solver_times(cfg);
    BoussinesqData data;
    data.u0 = make_divergence_free_velocity(g, TestFieldKind::GaussianBump, seed, amp_u0);
    data.theta0 = make_test_scalar(g, TestFieldKind::GaussianBump, seed + 1, amp_theta0);

    VectorField fprof(g);
    for (int c = 0; c < g.dim(); ++c)
        fprof[c] = make_test_scalar(g, TestFieldKind::MultiMode, seed + 10 + static_cast<unsigned>(c),
                                    amp_force_u);
    ScalarField gprof = make_test_scalar(g, TestFieldKind::MultiMode, seed + 20, amp_force_theta);

    data.force_u = VectorTrajectory(g, times);
    data.force_theta = ScalarTrajectory(g, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double env = std::exp(-2.0 * times[i] / cfg.T);
        VectorField fi = fprof;
        scale(fi, env);
        data.force_u.snapshots[i] = fi;
        ScalarField gi = gprof;
        scale(gi, env);
        data.force_theta.snapshots[i] = gi;
    }
    return data;
}

} // namespace fracbq
