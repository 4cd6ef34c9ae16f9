#pragma once

#include "fracbq/trajectory.hpp"

namespace fracbq {

// Space-time smoothing potential
//   I_beta(psi)(t, x) = integral ( |t-s|^{1/alpha} + |x-y| )^{-(d+alpha-beta)}
//                       psi(s, y) dy ds
// over the trajectory support, trapezoid rule in time and an FFT lattice
// convolution in space (periodic distance). The kernel cell containing the
// space-time origin gets its cell-averaged value, computed by adaptive
// refinement, since the integrand is singular but locally integrable there.
// Requires 0 < beta < d + alpha.
ScalarTrajectory parabolic_riesz(const ScalarTrajectory& tr, double beta, double alpha);

} // namespace fracbq
