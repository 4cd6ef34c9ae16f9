#pragma once

#include "fracbq/field.hpp"
#include "fracbq/norms.hpp"
#include "fracbq/scaling.hpp"
#include "fracbq/solver.hpp"

#include <string>
#include <vector>

namespace fracbq {

// Field files: bytes 'F','B','F','1'; u32 LE dimension; one u32 LE size per
// axis; f64 LE torus side; row-major f64 LE samples. Vector fields store the
// components back to back after the single header.
void write_fbf1(const std::string& path, const ScalarField& f);
void write_fbf1(const std::string& path, const VectorField& f);
ScalarField read_scalar_fbf1(const std::string& path);
VectorField read_vector_fbf1(const std::string& path);

// JSON config with keys alpha, d, n, L, T, nt, p, gamma, delta_force,
// weight_c, smallness_delta, tol, max_iter; optional time_grid
// ("log-graded" | "uniform"), temperature_advection_sign, enable_buoyancy,
// enable_advection. Missing keys keep the defaults. Malformed input throws
// std::invalid_argument.
SolverConfig parse_config_json(const std::string& text);
SolverConfig load_config(const std::string& path);
std::string config_to_json(const SolverConfig& cfg);

std::string diagnostics_to_json(const PicardDiagnostics& diag, const SolverConfig& cfg);
std::string norm_report_to_json(const NormReport& report);
std::string scaling_report_to_json(const ScalingReport& report);

void write_text_file(const std::string& path, const std::string& text);
void write_residual_csv(const std::string& path, const std::vector<double>& update_norms);
void write_equivalence_csv(const std::string& path, const EquivalenceStats& stats);

} // namespace fracbq
