#pragma once

#include "fracbq/indices.hpp"
#include "fracbq/norms.hpp"
#include "fracbq/trajectory.hpp"

#include <vector>

namespace fracbq {

// Velocity and temperature trajectories on one shared grid and time set.
struct BoussinesqState {
    VectorTrajectory velocity;
    ScalarTrajectory temperature;

    BoussinesqState() = default;
    BoussinesqState(const SpectralGrid& g, const std::vector<double>& times)
        : velocity(g, times), temperature(g, times) {}
};

// Initial fields plus force trajectories sampled on the solver time grid.
struct BoussinesqData {
    VectorField u0;
    ScalarField theta0;
    VectorTrajectory force_u;
    ScalarTrajectory force_theta;
};

struct SolverConfig {
    double alpha = 1.5;
    int d = 2;
    int n = 64;
    double L = 2.0 * 3.14159265358979323846;
    double T = 1.0;
    int nt = 64;
    double p = 6.0;
    double gamma = 0.5;
    double delta_force = 0.5;
    double weight_c = 16.0;       // temperature weight in the composite norm
    double smallness_delta = 0.0; // 0 means: set to 2 max(|U0|, |F|) at solve time
    double tol = 1e-9;
    int max_iter = 40;
    TimeGridKind time_grid = TimeGridKind::LogGraded;
    // The temperature equation carries +div(theta u); flip to -1 for the
    // opposite transport convention.
    double temperature_advection_sign = 1.0;
    bool enable_buoyancy = true;
    bool enable_advection = true;
    SupOptions norm_options{};
};

SpectralGrid solver_grid(const SolverConfig& cfg);
std::vector<double> solver_times(const SolverConfig& cfg);

// Composite solution norm: velocity trajectory norm plus weight_c times the
// temperature trajectory norm, exponents from derived_indices.
double composite_norm(const BoussinesqState& state, const SolverConfig& cfg);

// Exact per-mode Duhamel quadrature of integral_0^t exp(-(t-s)|k|^alpha)
// source(s) ds with the source piecewise linear between its time nodes.
ScalarTrajectory duhamel(const ScalarTrajectory& source, double alpha);
VectorTrajectory duhamel(const VectorTrajectory& source, double alpha);

// Heat flow of the initial data along the time grid.
BoussinesqState heat_flow_state(const VectorField& u0, const ScalarField& theta0,
                                const std::vector<double>& times, double alpha);

// Buoyancy coupling: velocity increment duhamel(P(theta e_d)), temperature 0.
BoussinesqState buoyancy_term(const ScalarTrajectory& temperature, double alpha);

// Quadratic transport: velocity -duhamel(P(div(u_U (x) u_V))), temperature
// temp_sign * duhamel(div(theta_U u_V)). Products are dealiased.
BoussinesqState advection_term(const BoussinesqState& U, const BoussinesqState& V, double alpha,
                               double temp_sign);

// Forced part: velocity duhamel(P(f)), temperature duhamel(g).
BoussinesqState force_term(const VectorTrajectory& f, const ScalarTrajectory& g, double alpha);

struct PicardDiagnostics {
    bool converged = false;
    int iterations = 0;
    std::vector<double> update_norms; // composite norm of successive differences
    std::vector<double> contraction;  // ratios of successive update norms
    double final_residual = 0.0;
    double initial_norm = 0.0;  // |U0|_E
    double force_norm = 0.0;    // |F|_E
    double solution_norm = 0.0; // |U|_E
    double delta = 0.0;         // smallness budget used
    bool within_ball = false;   // solution_norm <= 3 delta
};

struct PicardResult {
    BoussinesqState state;
    PicardDiagnostics diagnostics;
};

// Fixed-point iteration U <- U0 + F + L(U) + B(U, U) starting from U0 + F.
// Non-convergence within max_iter is reported in the diagnostics, not thrown.
PicardResult picard_solve(const SolverConfig& cfg, const BoussinesqData& data);

// Composite norm of U - (U0 + F + L(U) + B(U,U)).
double fixed_point_residual(const BoussinesqState& state, const SolverConfig& cfg,
                            const BoussinesqData& data);

// Independent reference integrator for the differential form: second-order
// exponential time stepping with the stiff part integrated exactly per mode
// and the frozen nonlinearity corrected at the interval end.
BoussinesqState etd_reference_solve(const SolverConfig& cfg, const BoussinesqData& data);

struct ConstantEstimate {
    double linear_constant = 0.0;   // sup |L(U)| / |U| over probes, config weight
    double bilinear_constant = 0.0; // sup |B(U,V)| / (|U| |V|) over probe pairs
    std::vector<double> weights;    // temperature weights swept
    std::vector<double> linear_by_weight;
    std::vector<double> bilinear_by_weight;
};

// Empirical operator norms over seeded random probe states, including
// theta-only probes so the linear constant scales exactly like 1/weight.
ConstantEstimate estimate_constants(const SolverConfig& cfg, unsigned seed, int probes = 20,
                                    const std::vector<double>& weights = {1.0, 4.0, 16.0});

} // namespace fracbq
