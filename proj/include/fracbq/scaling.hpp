#pragma once

#include "fracbq/norms.hpp"
#include "fracbq/solver.hpp"

#include <string>
#include <vector>

namespace fracbq {

// Lattice dilations. A factor lambda in {2, 1/2} maps the sample array onto
// itself: the grid side becomes L/lambda, times shrink by lambda^alpha, and
// values pick up lambda^a. No interpolation happens, so identities that are
// exact in the continuum stay exact here up to roundoff.
ScalarField rescale_field(const ScalarField& f, double lambda, double amplitude_exponent);
VectorField rescale_field(const VectorField& f, double lambda, double amplitude_exponent);
ScalarTrajectory rescale_trajectory(const ScalarTrajectory& tr, double lambda, double alpha,
                                    double amplitude_exponent);
VectorTrajectory rescale_trajectory(const VectorTrajectory& tr, double lambda, double alpha,
                                    double amplitude_exponent);

// velocity exponent alpha-1, temperature 2 alpha-1
BoussinesqState rescale_state(const BoussinesqState& state, double lambda, double alpha);
// u0: alpha-1, theta0: 2 alpha-1, f: 2 alpha-1, g: 3 alpha-1
BoussinesqData rescale_data(const BoussinesqData& data, double lambda, double alpha);

struct ScalingItem {
    std::string name;
    double before = 0.0;
    double after = 0.0;
    double deviation = 0.0; // relative
    bool ok = true;
};

struct ScalingReport {
    double lambda = 1.0;
    std::vector<ScalingItem> items;
    double max_deviation = 0.0;
    bool all_ok = true;
};

// Solves the system twice, once from the original data and once from the
// rescaled data on the contracted grid, and compares the rescaled first
// solution against the second. Tolerance 1e-3 on relative deviations.
ScalingReport check_solution_covariance(const SolverConfig& cfg, const BoussinesqData& data,
                                        double lambda);

// Evaluates the eight critical-invariance identities: initial data in the
// heat-flow Morrey norms (both the time-integrated form and the parabolic
// Morrey norm of the heat extension), forces in the smoothed space-time
// norms, and the solution pair in its resolution norms. Tolerance 3%.
ScalingReport check_norm_criticality(const SolverConfig& cfg, const BoussinesqData& data,
                                     const BoussinesqState& state, double lambda);

struct EquivalenceRow {
    int id = 0;
    double tlm = 0.0; // time-integrated heat-flow Morrey norm
    double pm = 0.0;  // parabolic Morrey norm of the heat extension
    double ratio = 0.0; // tlm / pm
};

struct EquivalenceStats {
    std::vector<EquivalenceRow> rows;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double spread = 0.0; // ratio_max / ratio_min
    // pm <= (1 + slack) * tlm held for every row (the direction whose
    // constant is 1 in the continuum)
    bool one_sided_ok = false;
    double worst_one_sided = 0.0; // max over rows of pm / tlm
    bool all_finite = false;
};

// Two-sided comparability sweep between the time-integrated heat-flow Morrey
// norm with exponents (p, spatial q from d/q_sp = (d+alpha)/q - alpha/p) and
// the parabolic Morrey norm of the heat extension with exponents (p, q).
// Family members must be mean-free. Requires p > alpha q / (d + alpha).
EquivalenceStats check_norm_equivalence(const std::vector<ScalarField>& family, double alpha,
                                        double p, double q,
                                        const SupOptions& opts = {});

// Ratio of the heat-extension parabolic Morrey norm (exponents p and
// q = (d+alpha)/beta) to the thermic Besov norm of index -beta. Requires
// p < alpha/beta and a mean-free f.
double check_besov_embedding(const ScalarField& f, double beta, double alpha, double p,
                            const SupOptions& opts = {});

// Converse direction at p = 1 with the box-shaped regions: ratio of the
// thermic Besov norm with beta = (d+alpha)/q to the heat-extension parabolic
// Morrey norm with exponents (1, q).
double check_besov_maximality(const ScalarField& f, double alpha, double q,
                             const SupOptions& opts = {});

} // namespace fracbq
