#pragma once

#include "fracbq/grid.hpp"

#include <complex>
#include <vector>

namespace fracbq {

// Real samples on the lattice, row-major, size grid.node_count().
struct ScalarField {
    SpectralGrid grid;
    std::vector<double> samples;

    ScalarField() = default;
    explicit ScalarField(const SpectralGrid& g) : grid(g), samples(g.node_count(), 0.0) {}
    ScalarField(const SpectralGrid& g, std::vector<double> v);
};

// d scalar components on one shared grid.
struct VectorField {
    SpectralGrid grid;
    std::vector<ScalarField> components;

    VectorField() = default;
    explicit VectorField(const SpectralGrid& g);

    int dim() const { return grid.dim(); }
    ScalarField& operator[](int c) { return components[static_cast<std::size_t>(c)]; }
    const ScalarField& operator[](int c) const { return components[static_cast<std::size_t>(c)]; }
};

// Complex Fourier coefficients on the full FFT cube, same flat layout as the
// physical samples. With the normalization used here the k = 0 coefficient
// equals the field mean.
struct Spectrum {
    SpectralGrid grid;
    std::vector<std::complex<double>> modes;

    Spectrum() = default;
    explicit Spectrum(const SpectralGrid& g) : grid(g), modes(g.node_count(), {0.0, 0.0}) {}
};

struct VectorSpectrum {
    SpectralGrid grid;
    std::vector<Spectrum> components;

    VectorSpectrum() = default;
    explicit VectorSpectrum(const SpectralGrid& g);

    Spectrum& operator[](int c) { return components[static_cast<std::size_t>(c)]; }
    const Spectrum& operator[](int c) const { return components[static_cast<std::size_t>(c)]; }
};

// Elementwise helpers shared by tests and the solver.
void axpy(double a, const ScalarField& x, ScalarField& y); // y += a*x
void axpy(double a, const VectorField& x, VectorField& y);
void scale(ScalarField& f, double a);
void scale(VectorField& f, double a);
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);

double max_abs(const ScalarField& f);
double max_abs(const VectorField& f);
// Discrete L2 norm including the cell measure, (sum |f|^2 h^d)^{1/2}.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double mean(const ScalarField& f);

} // namespace fracbq
