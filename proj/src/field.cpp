#include "fracbq/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fracbq {

ScalarField::ScalarField(const SpectralGrid& g, std::vector<double> v)
    : grid(g), samples(std::move(v)) {
    if (samples.size() != grid.node_count())
        throw std::invalid_argument("ScalarField: sample count does not match grid");
}

VectorField::VectorField(const SpectralGrid& g) : grid(g) {
    components.assign(static_cast<std::size_t>(g.dim()), ScalarField(g));
}

VectorSpectrum::VectorSpectrum(const SpectralGrid& g) : grid(g) {
    components.assign(static_cast<std::size_t>(g.dim()), Spectrum(g));
}

void axpy(double a, const ScalarField& x, ScalarField& y) {
    if (x.grid != y.grid) throw std::invalid_argument("axpy: grid mismatch");
    for (std::size_t i = 0; i < x.samples.size(); ++i) y.samples[i] += a * x.samples[i];
}

void axpy(double a, const VectorField& x, VectorField& y) {
    if (x.grid != y.grid) throw std::invalid_argument("axpy: grid mismatch");
    for (int c = 0; c < x.dim(); ++c) axpy(a, x[c], y[c]);
}

void scale(ScalarField& f, double a) {
    for (auto& v : f.samples) v *= a;
}

void scale(VectorField& f, double a) {
    for (auto& c : f.components) scale(c, a);
}

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid) throw std::invalid_argument("pointwise_product: grid mismatch");
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = a.samples[i] * b.samples[i];
    return out;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const VectorField& f) {
    double m = 0.0;
    for (const auto& c : f.components) m = std::max(m, max_abs(c));
    return m;
}

double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.samples) s += v * v;
    return std::sqrt(s * f.grid.cell_volume());
}

double l2_norm(const VectorField& f) {
    double s = 0.0;
    for (const auto& c : f.components)
        for (double v : c.samples) s += v * v;
    return std::sqrt(s * f.grid.cell_volume());
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.samples) s += v;
    return s / static_cast<double>(f.samples.size());
}

} // namespace fracbq
