#pragma once

#include "fracbq/trajectory.hpp"

#include <map>
#include <string>

namespace fracbq {

// Shape of the space-time neighborhoods the sup estimate scans. Ball couples
// time and space through |t-s|^{1/alpha} + |x-y| < r; Box uses the product
// region |t-s| <= r^alpha times |x-y|_inf <= r.
enum class RegionVariant { Ball, Box };

struct SupOptions {
    RegionVariant variant = RegionVariant::Box;
    // Sup is scanned over a center subgrid with this many centers per axis
    // (capped at n) and every time_center_stride-th time node. Zero or
    // negative means every node; only the full scan is exactly invariant
    // under lattice translations.
    int space_centers_per_axis = 0;
    int time_center_stride = 1;
    // Replaces the r^{d+alpha} normalization of the 1/p part by the discrete
    // region measure, which makes the p0 < p1 embedding an exact Jensen
    // inequality on the discrete sums.
    bool measure_normalized = false;
};

struct MorreyOptions {
    int space_centers_per_axis = 0; // nonpositive scans every node
    bool measure_normalized = false;
};

// sup over centers x and dyadic radii r of
//   r^{-d (1/p - 1/q)} ( integral_{B(x,r)} |f|^p )^{1/p},
// with radii running from one cell up to the torus covering radius so the
// p = q case reproduces the discrete L^p norm exactly.
double morrey_norm(const ScalarField& f, double p, double q, const MorreyOptions& opts = {});
double morrey_norm(const VectorField& f, double p, double q, const MorreyOptions& opts = {});

// sup over space-time centers and dyadic radii of
//   r^{-(d+alpha) (1/p - 1/q)} ( integral_region |psi|^p )^{1/p}
// with the trapezoid rule in time and the region shape from opts.
double parabolic_morrey_norm(const ScalarTrajectory& tr, double p, double q, double alpha,
                             const SupOptions& opts = {});
double parabolic_morrey_norm(const VectorTrajectory& tr, double p, double q, double alpha,
                             const SupOptions& opts = {});

struct BesovOptions {
    double t_min = 1.0 / 4096.0; // 2^-12
    double t_max = 64.0;         // 2^6
    int nodes_per_octave = 4;
};

// sup over a dyadic time grid of t^{beta/alpha} * sup_x |heat(f, t)|.
double thermic_besov_norm(const ScalarField& f, double beta, double alpha,
                          const BesovOptions& opts = {});
double thermic_besov_norm(const VectorField& f, double beta, double alpha,
                          const BesovOptions& opts = {});

struct TlmOptions {
    double t_min = 1.0 / 4096.0;
    double t_max = 64.0;
    // Quadrature nodes sit at t_min * 2^{j/nodes_per_octave}; keeping them
    // dyadic makes the norm exactly dilation-covariant on lattice rescalings.
    int nodes_per_octave = 4;
    MorreyOptions morrey;
};

struct TlmResult {
    double value = 0.0;
    // Analytic bound on the quadrature mass outside [t_min, t_max]; infinite
    // when the input has a nonzero mean, which the heat flow never damps.
    double tail_bound = 0.0;
};

// Morrey norm (exponents p, q) of x -> ( integral_0^inf t^{-sigma p / alpha}
// |heat(f,t)(x)|^p dt/t )^{1/p}, quadrature on log-spaced nodes. Requires
// sigma < 0.
TlmResult tlm_norm(const ScalarField& f, double sigma, double p, double q, double alpha,
                   const TlmOptions& opts = {});
TlmResult tlm_norm(const VectorField& f, double sigma, double p, double q, double alpha,
                   const TlmOptions& opts = {});

// Parabolic Morrey norm of the gamma-smoothed trajectory (each snapshot run
// through riesz_smoothing). Snapshots must be mean-free.
double sobolev_morrey_norm(const ScalarTrajectory& tr, double smoothing, double p, double q,
                           double alpha, const SupOptions& opts = {});
double sobolev_morrey_norm(const VectorTrajectory& tr, double smoothing, double p, double q,
                           double alpha, const SupOptions& opts = {});

struct HolderReport {
    double product_norm = 0.0;
    double left_norm = 0.0;
    double right_norm = 0.0;
    double ratio = 0.0; // product / (left * right)
    bool ok = false;    // ratio <= 1 + 1e-9
};

// Checks the product estimate with 1/p = 1/p1 + 1/p2 and 1/q = 1/q1 + 1/q2
// on the given pair.
HolderReport holder_check(const ScalarTrajectory& f, const ScalarTrajectory& g, double p1,
                          double q1, double p2, double q2, double alpha,
                          const SupOptions& opts = {});

// Report shape shared by the CLI norm commands.
struct NormReport {
    std::string norm_name;
    std::map<std::string, double> params;
    double value = 0.0;
    double refinement_gap = 0.0;
    double tail_bound = 0.0;
};

} // namespace fracbq
