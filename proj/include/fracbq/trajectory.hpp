#pragma once

#include "fracbq/field.hpp"

#include <vector>

namespace fracbq {

enum class TimeGridKind {
    Uniform,   // equal steps on [0, T]
    LogGraded, // t = 0 plus log-spaced nodes, four per octave, refined toward 0
};

// Strictly increasing times starting at 0. The log-graded grid concentrates
// nodes near the initial time where the Duhamel integrands are steepest.
std::vector<double> make_time_grid(double horizon, int count, TimeGridKind kind);

// Trapezoid quadrature weights for a nonuniform time grid.
std::vector<double> trapezoid_weights(const std::vector<double>& times);

template <typename FieldT>
struct BasicTrajectory {
    SpectralGrid grid;
    std::vector<double> times;
    std::vector<FieldT> snapshots;

    BasicTrajectory() = default;
    BasicTrajectory(const SpectralGrid& g, std::vector<double> ts)
        : grid(g), times(std::move(ts)), snapshots(times.size(), FieldT(g)) {}

    std::size_t size() const { return times.size(); }
};

using ScalarTrajectory = BasicTrajectory<ScalarField>;
using VectorTrajectory = BasicTrajectory<VectorField>;

// Throws unless times are nonnegative, strictly increasing, at least 8 of
// them, and snapshots match the grid.
void validate(const ScalarTrajectory& tr);
void validate(const VectorTrajectory& tr);

void axpy(double a, const ScalarTrajectory& x, ScalarTrajectory& y);
void axpy(double a, const VectorTrajectory& x, VectorTrajectory& y);
void scale(ScalarTrajectory& tr, double a);
void scale(VectorTrajectory& tr, double a);

double max_abs(const ScalarTrajectory& tr);
double max_abs(const VectorTrajectory& tr);

} // namespace fracbq
