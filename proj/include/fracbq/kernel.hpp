#pragma once

#include "fracbq/operators.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fracbq {

// Evaluation lattice for the inverse-transform kernel quadrature. The torus
// side and mode count control periodization and frequency-truncation error
// respectively.
struct KernelGrid {
    double side = 0.0;
    int n = 0;

    // Sizes the lattice from the requested points and time scale t^{1/alpha}:
    // the torus is at least four times wider than the point extent and wide
    // enough that images of the heavy polynomial tail stay below about 1e-7
    // of the kernel peak; the mode cutoff resolves the symbol decay to 1e-12.
    static KernelGrid auto_size(int dim, double alpha, double t, double degree,
                                const std::vector<std::array<double, 3>>& points);
};

// Kernel values K_t at the requested spatial points, where K_t has Fourier
// weight symbol(k) * exp(-t |k|^alpha).
struct KernelSample {
    double alpha = 0.0;
    double degree = 0.0;
    double t = 0.0;
    KernelGrid grid;
    std::vector<std::array<double, 3>> points;
    std::vector<double> values;
};

// Evaluates the kernel on a periodic lattice. Points that coincide with
// lattice nodes are read from a single inverse FFT; off-lattice points are
// evaluated by direct summation over the modes whose weight exceeds 1e-11 of
// the peak weight. Requires t > 0 and 1 <= alpha <= 2.
KernelSample kernel_physical(const MultiplierSpec& spec, int dim, double alpha, double t,
                             const std::vector<std::array<double, 3>>& points,
                             std::optional<KernelGrid> grid = std::nullopt);

// Closed forms used as oracles for the evaluator.
// alpha = 2:  (4 pi t)^{-d/2} exp(-r^2 / (4 t))
double gaussian_heat_kernel(int dim, double t, double r);
// alpha = 1, d = 2 or 3: c_d t / (t^2 + r^2)^{(d+1)/2}
double poisson_kernel(int dim, double t, double r);

// Regular point grid helper: count^d points centered at the origin with the
// given spacing (coordinates are integer multiples of the spacing).
std::vector<std::array<double, 3>> centered_point_grid(int dim, int count, double spacing);

// CSV report with one row per point: t, coordinates, value, and the
// self-similar normalization t^{(d+degree)/alpha} * value.
void write_kernel_csv(const std::string& path, const std::vector<KernelSample>& samples, int dim);

} // namespace fracbq
