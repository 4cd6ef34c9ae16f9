#pragma once

#include "fracbq/solver.hpp"

#include <vector>

namespace fracbq {

enum class TestFieldKind { GaussianBump, MultiMode, RandomBandlimited };

// Mean-free scalar test field, band-limited below the dealiasing cutoff and
// normalized to the given sup amplitude. Deterministic in (kind, seed).
ScalarField make_test_scalar(const SpectralGrid& g, TestFieldKind kind, unsigned seed,
                             double amplitude = 1.0);

// Family cycling through the three kinds with per-member seeds.
std::vector<ScalarField> make_test_family(const SpectralGrid& g, int count, unsigned seed,
                                          double amplitude = 1.0);

// Exactly divergence-free velocity: perpendicular gradient of a stream
// function in 2d, curl of a vector potential in 3d. Requires d >= 2.
VectorField make_divergence_free_velocity(const SpectralGrid& g, TestFieldKind kind,
                                          unsigned seed, double amplitude = 1.0);

// Initial data plus force trajectories on the solver's time grid. The forces
// share one spatial profile modulated by a decaying envelope in time.
BoussinesqData make_seeded_data(const SolverConfig& cfg, unsigned seed, double amp_u0,
                                double amp_theta0, double amp_force_u, double amp_force_theta);

} // namespace fracbq
