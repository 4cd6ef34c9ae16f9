#include "fracbq/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracbq {
namespace {

double norm_of(const std::array<double, 3>& k, int dim) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += k[a] * k[a];
    return std::sqrt(s);
}

void check_alpha_range(double alpha) {
    if (!(alpha >= 1.0 && alpha <= 2.0))
        throw std::invalid_argument("heat_propagate: alpha must lie in [1, 2], got " +
                                    std::to_string(alpha));
}

} // namespace

MultiplierSpec power_symbol(double rho, ZeroModePolicy zero_mode) {
    MultiplierSpec m;
    m.degree = rho;
    m.zero_mode = zero_mode;
    m.symbol = [rho](const std::array<double, 3>& k, int dim) -> std::complex<double> {
        return std::pow(norm_of(k, dim), rho);
    };
    return m;
}

MultiplierSpec projected_divergence_symbol(int j, int l, int m_idx) {
    MultiplierSpec m;
    m.degree = 1.0;
    m.zero_mode = ZeroModePolicy::Zero;
    m.symbol = [j, l, m_idx](const std::array<double, 3>& k, int dim) -> std::complex<double> {
        const double n2 = norm_of(k, dim) * norm_of(k, dim);
        return k[j] * k[l] * k[m_idx] / n2;
    };
    return m;
}

void apply_multiplier_inplace(Spectrum& s, const MultiplierSpec& m) {
    const SpectralGrid& g = s.grid;
    const std::size_t count = g.node_count();
    for (std::size_t i = 0; i < count; ++i) {
        if (i == 0) {
            if (m.zero_mode == ZeroModePolicy::Zero) s.modes[0] = 0.0;
            continue;
        }
        s.modes[i] *= m.symbol(g.wavevector(i), g.dim());
    }
}

ScalarField fractional_laplacian(const ScalarField& f, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("fractional_laplacian: alpha must be positive");
    Spectrum s = forward_transform(f);
    const std::size_t count = f.grid.node_count();
    for (std::size_t i = 1; i < count; ++i)
        s.modes[i] *= std::pow(f.grid.wavevector_sq(i), alpha / 2.0);
    s.modes[0] = 0.0;
    return inverse_transform(s);
}

VectorField fractional_laplacian(const VectorField& f, double alpha) {
    VectorField out(f.grid);
    for (int c = 0; c < f.dim(); ++c) out[c] = fractional_laplacian(f[c], alpha);
    return out;
}

void heat_propagate_inplace(Spectrum& s, double t, double alpha) {
    check_alpha_range(alpha);
    if (!(t >= 0.0)) throw std::invalid_argument("heat_propagate: t must be nonnegative");
    if (t == 0.0) return;
    const std::size_t count = s.grid.node_count();
    for (std::size_t i = 1; i < count; ++i)
        s.modes[i] *= std::exp(-t * std::pow(s.grid.wavevector_sq(i), alpha / 2.0));
}

ScalarField heat_propagate(const ScalarField& f, double t, double alpha) {
    Spectrum s = forward_transform(f);
    heat_propagate_inplace(s, t, alpha);
    return inverse_transform(s);
}

VectorField heat_propagate(const VectorField& f, double t, double alpha) {
    VectorField out(f.grid);
    for (int c = 0; c < f.dim(); ++c) out[c] = heat_propagate(f[c], t, alpha);
    return out;
}

void leray_project_inplace(VectorSpectrum& s) {
    const SpectralGrid& g = s.grid;
    const int d = g.dim();
    const std::size_t count = g.node_count();
    for (std::size_t i = 1; i < count; ++i) {
        const auto k = g.wavevector(i);
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += k[a] * k[a];
        std::complex<double> kdotv(0.0, 0.0);
        for (int a = 0; a < d; ++a) kdotv += k[a] * s[a].modes[i];
        kdotv /= k2;
        for (int a = 0; a < d; ++a) s[a].modes[i] -= k[a] * kdotv;
    }
}

VectorField leray_project(const VectorField& v) {
    VectorSpectrum s = forward_transform(v);
    leray_project_inplace(s);
    return inverse_transform(s);
}

ScalarField riesz_smoothing(const ScalarField& f, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("riesz_smoothing: gamma must be positive");
    Spectrum s = forward_transform(f);
    const double scale = max_abs(f);
    if (std::abs(s.modes[0]) > 1e-12 * std::max(scale, 1e-300))
        throw std::invalid_argument("riesz_smoothing: input must be mean-free");
    s.modes[0] = 0.0;
    const std::size_t count = f.grid.node_count();
    for (std::size_t i = 1; i < count; ++i)
        s.modes[i] *= std::pow(f.grid.wavevector_sq(i), -gamma / 2.0);
    return inverse_transform(s);
}

VectorField riesz_smoothing(const VectorField& f, double gamma) {
    VectorField out(f.grid);
    for (int c = 0; c < f.dim(); ++c) out[c] = riesz_smoothing(f[c], gamma);
    return out;
}

VectorField tensor_divergence(const VectorField& u, const VectorField& v) {
    if (u.grid != v.grid) throw std::invalid_argument("tensor_divergence: grid mismatch");
    const int d = u.dim();
    VectorField out(u.grid);
    for (int i = 0; i < d; ++i) {
        Spectrum acc(u.grid);
        for (int j = 0; j < d; ++j) {
            Spectrum s = forward_transform(pointwise_product(u[i], v[j]));
            dealias_inplace(s);
            derivative_inplace(s, j);
            for (std::size_t m = 0; m < acc.modes.size(); ++m) acc.modes[m] += s.modes[m];
        }
        out[i] = inverse_transform(acc);
    }
    return out;
}

ScalarField scalar_flux_divergence(const ScalarField& theta, const VectorField& u) {
    if (theta.grid != u.grid) throw std::invalid_argument("scalar_flux_divergence: grid mismatch");
    const int d = u.dim();
    Spectrum acc(u.grid);
    for (int j = 0; j < d; ++j) {
        Spectrum s = forward_transform(pointwise_product(theta, u[j]));
        dealias_inplace(s);
        derivative_inplace(s, j);
        for (std::size_t m = 0; m < acc.modes.size(); ++m) acc.modes[m] += s.modes[m];
    }
    return inverse_transform(acc);
}

ScalarField pressure_from_state(const VectorField& u, const ScalarField& theta,
                                const VectorField& f) {
    if (u.grid != theta.grid || u.grid != f.grid)
        throw std::invalid_argument("pressure_from_state: grid mismatch");
    const int d = u.grid.dim();

    // right-hand side div(div(u (x) u) - f - theta e_d), assembled in spectral space
    VectorField rhs_vec = tensor_divergence(u, u);
    axpy(-1.0, f, rhs_vec);
    ScalarField neg_theta = theta;
    scale(neg_theta, -1.0);
    axpy(1.0, neg_theta, rhs_vec[d - 1]);

    Spectrum rhs(u.grid);
    for (int a = 0; a < d; ++a) {
        Spectrum s = forward_transform(rhs_vec[a]);
        derivative_inplace(s, a);
        for (std::size_t m = 0; m < rhs.modes.size(); ++m) rhs.modes[m] += s.modes[m];
    }

    // invert (-Laplace): divide by |k|^2, mean set to zero
    rhs.modes[0] = 0.0;
    const std::size_t count = u.grid.node_count();
    for (std::size_t i = 1; i < count; ++i) rhs.modes[i] /= u.grid.wavevector_sq(i);
    return inverse_transform(rhs);
}

} // namespace fracbq
