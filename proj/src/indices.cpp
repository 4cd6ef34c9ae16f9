#include "fracbq/indices.hpp"

#include <stdexcept>
#include <string>

namespace fracbq {

IndexFamily derived_indices(double alpha, int d, double p, double gamma, double delta) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("derived_indices: alpha must lie in (1, 2), got " +
                                    std::to_string(alpha));
    if (d < 2 || d > 3)
        throw std::invalid_argument("derived_indices: d must be 2 or 3, got " + std::to_string(d));

    const double da = d + alpha;
    const double p_lower = (3.0 * alpha - 2.0) / (alpha - 1.0);
    const double p_upper = da / (alpha - 1.0);
    if (!(p > p_lower && p <= p_upper))
        throw std::invalid_argument(
            "derived_indices: p must satisfy (3 alpha - 2)/(alpha - 1) = " +
            std::to_string(p_lower) + " < p <= (d + alpha)/(alpha - 1) = " +
            std::to_string(p_upper) + ", got p = " + std::to_string(p));
    if (!(gamma > 0.0 && gamma < alpha))
        throw std::invalid_argument("derived_indices: gamma must lie in (0, alpha), got " +
                                    std::to_string(gamma));
    if (!(delta > 0.0 && delta < alpha))
        throw std::invalid_argument("derived_indices: delta must lie in (0, alpha), got " +
                                    std::to_string(delta));

    IndexFamily fam;
    fam.alpha = alpha;
    fam.d = d;
    fam.gamma = gamma;
    fam.delta = delta;
    fam.p_lower = p_lower;
    fam.p_upper = p_upper;

    fam.velocity.p = p;
    fam.velocity.q = 1.0 / ((alpha - 1.0) / da - (alpha / d) * (1.0 / p - (alpha - 1.0) / da));

    const double tp = (alpha - 1.0) / (2.0 * alpha - 1.0) * p;
    fam.temperature.p = tp;
    fam.temperature.q =
        1.0 / ((2.0 * alpha - 1.0) / da - (alpha / d) * (1.0 / tp - (2.0 * alpha - 1.0) / da));

    fam.force_u.p = (alpha - 1.0) / (2.0 * alpha - 1.0 - gamma) * p;
    fam.force_u.q = da / (2.0 * alpha - 1.0 - gamma);

    fam.force_theta.p = (alpha - 1.0) / (3.0 * alpha - 1.0 - delta) * p;
    fam.force_theta.q = da / (3.0 * alpha - 1.0 - delta);

    fam.vel_traj_q = da / (alpha - 1.0);
    fam.temp_traj_q = da / (2.0 * alpha - 1.0);

    return fam;
}

} // namespace fracbq
