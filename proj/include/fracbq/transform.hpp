#pragma once

#include "fracbq/field.hpp"

namespace fracbq {

// DFT conventions: forward carries the 1/n^d factor so modes[0] is the field
// mean; inverse is the plain synthesis sum. Phase sign matches exp(+i k.x)
// synthesis with k = 2*pi*m/L.
Spectrum forward_transform(const ScalarField& f);
ScalarField inverse_transform(const Spectrum& s);

VectorSpectrum forward_transform(const VectorField& f);
VectorField inverse_transform(const VectorSpectrum& s);

// Raw complex transforms on the FFT cube, used by kernel evaluation.
void fft_forward_inplace(const SpectralGrid& g, std::vector<std::complex<double>>& data);
void fft_inverse_inplace(const SpectralGrid& g, std::vector<std::complex<double>>& data);

// Differentiation along one axis via the i*k multiplier; the unpaired Nyquist
// bin is zeroed so real fields stay real.
ScalarField spectral_derivative(const ScalarField& f, int axis);
void derivative_inplace(Spectrum& s, int axis);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& f);

// Two-thirds rule: zeroes every mode whose integer frequency exceeds
// floor(n/3) in absolute value on any axis.
void dealias_inplace(Spectrum& s);
Spectrum dealias(Spectrum s);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& f);

// Largest integer frequency kept by dealias.
int dealias_cutoff(const SpectralGrid& g);

} // namespace fracbq
