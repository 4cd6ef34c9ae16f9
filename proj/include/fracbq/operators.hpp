#pragma once

#include "fracbq/field.hpp"
#include "fracbq/transform.hpp"

#include <functional>

namespace fracbq {

enum class ZeroModePolicy { Zero, Identity };

// Fourier multiplier m(k) together with its homogeneity degree and the value
// assigned to the k = 0 mode, where a homogeneous symbol is singular or
// undefined.
struct MultiplierSpec {
    std::function<std::complex<double>(const std::array<double, 3>&, int dim)> symbol;
    double degree = 0.0;
    ZeroModePolicy zero_mode = ZeroModePolicy::Zero;
};

// |k|^rho with the given zero-mode policy.
MultiplierSpec power_symbol(double rho, ZeroModePolicy zero_mode = ZeroModePolicy::Zero);
// One scalar component k_j k_l k_m / |k|^2 of the projected-divergence
// symbol family (degree 1).
MultiplierSpec projected_divergence_symbol(int j, int l, int m);

void apply_multiplier_inplace(Spectrum& s, const MultiplierSpec& m);

// (-Laplace)^{alpha/2}, alpha > 0.
ScalarField fractional_laplacian(const ScalarField& f, double alpha);
VectorField fractional_laplacian(const VectorField& f, double alpha);

// Semigroup of the fractional dissipation, multiplier exp(-t |k|^alpha).
// Requires t >= 0 and 1 <= alpha <= 2.
ScalarField heat_propagate(const ScalarField& f, double t, double alpha);
VectorField heat_propagate(const VectorField& f, double t, double alpha);
void heat_propagate_inplace(Spectrum& s, double t, double alpha);

// Divergence-free projection, symbol delta_jk - k_j k_k / |k|^2; the k = 0
// mode is left unchanged.
VectorField leray_project(const VectorField& v);
void leray_project_inplace(VectorSpectrum& s);

// |k|^{-gamma} smoothing, gamma > 0. Requires a mean-free input: the k = 0
// coefficient must be below 1e-12 relative to the field scale.
ScalarField riesz_smoothing(const ScalarField& f, double gamma);
VectorField riesz_smoothing(const VectorField& f, double gamma);

// Pressure recovered from the momentum balance: solves
//   (-Laplace) p = div( div(u (x) u) - f - theta e_d )
// with a mean-free right-hand side, dealiasing the quadratic term. e_d is the
// last coordinate direction.
ScalarField pressure_from_state(const VectorField& u, const ScalarField& theta,
                                const VectorField& f);

// div(u (x) v) as a vector field, component i = sum_j d_j (u_i v_j).
// Inputs are multiplied pointwise and the products dealiased before
// differentiation.
VectorField tensor_divergence(const VectorField& u, const VectorField& v);
// div(theta u) with the same pointwise-product and dealias treatment.
ScalarField scalar_flux_divergence(const ScalarField& theta, const VectorField& u);

} // namespace fracbq
