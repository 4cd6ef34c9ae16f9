#include "fracbq/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracbq {

SpectralGrid::SpectralGrid(int dim, int samples_per_axis, double side_length)
    : dim_(dim), n_(samples_per_axis), side_(side_length) {
    nodes_ = 1;
    for (int a = 0; a < dim_; ++a) nodes_ *= static_cast<std::size_t>(n_);
}

double SpectralGrid::cell_volume() const {
    return std::pow(spacing(), dim_);
}

double SpectralGrid::wavenumber(int bin) const {
    return 2.0 * std::numbers::pi / side_ * freq_index(bin);
}

std::size_t SpectralGrid::flatten(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) flat = flat * n_ + static_cast<std::size_t>(idx[a]);
    return flat;
}

std::array<int, 3> SpectralGrid::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n_);
        flat /= n_;
    }
    return idx;
}

std::array<double, 3> SpectralGrid::coordinate(std::size_t flat) const {
    const auto idx = unflatten(flat);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    const double h = spacing();
    for (int a = 0; a < dim_; ++a) x[a] = h * idx[a];
    return x;
}

std::array<double, 3> SpectralGrid::wavevector(std::size_t flat) const {
    const auto idx = unflatten(flat);
    std::array<double, 3> k{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) k[a] = wavenumber(idx[a]);
    return k;
}

double SpectralGrid::wavevector_sq(std::size_t flat) const {
    const auto k = wavevector(flat);
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) s += k[a] * k[a];
    return s;
}

SpectralGrid make_grid(int dim, int samples_per_axis, double side_length) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("make_grid: dim must be 1, 2 or 3, got " + std::to_string(dim));
    if (samples_per_axis < 4 || samples_per_axis % 2 != 0)
        throw std::invalid_argument("make_grid: samples per axis must be even and >= 4, got " +
                                    std::to_string(samples_per_axis));
    if (!(side_length > 0.0))
        throw std::invalid_argument("make_grid: side length must be positive");
    return SpectralGrid(dim, samples_per_axis, side_length);
}

} // namespace fracbq
