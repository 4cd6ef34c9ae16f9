#pragma once

namespace fracbq {

// Exponent pair of a Morrey-type norm, first index p <= second index q.
struct NormParams {
    double p = 0.0;
    double q = 0.0;
};

// Full set of integrability exponents tied to one choice of (alpha, d, p,
// gamma, delta): the velocity pair (p, q), the temperature pair
// (theta_p, theta_q), and the smoothed force pairs (f_p, f_q) for the
// momentum force and (g_p, g_q) for the temperature force. The resolution
// trajectory spaces use second exponents vel_traj_q = (d+alpha)/(alpha-1)
// and temp_traj_q = (d+alpha)/(2 alpha-1).
struct IndexFamily {
    double alpha = 0.0;
    int d = 0;
    double gamma = 0.0;
    double delta = 0.0;

    NormParams velocity;    // (p, q)
    NormParams temperature; // (theta_p, theta_q)
    NormParams force_u;     // momentum force after gamma-smoothing
    NormParams force_theta; // temperature force after delta-smoothing

    double vel_traj_q = 0.0;
    double temp_traj_q = 0.0;

    // Admissible range of the primary exponent: p_lower < p <= p_upper.
    double p_lower = 0.0;
    double p_upper = 0.0;
};

// Derives every exponent from (alpha, d, p, gamma, delta). Throws
// std::invalid_argument naming the violated bound when alpha is outside
// (1, 2), p is outside ((3 alpha - 2)/(alpha - 1), (d + alpha)/(alpha - 1)],
// or gamma or delta falls outside (0, alpha).
IndexFamily derived_indices(double alpha, int d, double p, double gamma, double delta);

} // namespace fracbq
