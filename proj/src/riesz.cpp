#include "fracbq/riesz.hpp"

#include "fracbq/transform.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracbq {
namespace {

// Average of (|s|^{1/alpha} + |z|)^{-e} over the cell [-h/2,h/2]^d x
// [-w/2,w/2]. The integrand blows up at the origin but is integrable for
// e < d + alpha; nested parabolic shells (space halved, time divided by
// 2^alpha per level) peel the singularity off geometrically.
double singular_cell_average(int d, double alpha, double e, double h, double w) {
    const int m = 8; // midpoint samples per axis and per time direction
    double total = 0.0;
    double a = 0.5 * h;
    double b = 0.5 * w;
    for (int level = 0; level < 240; ++level) {
        const double a_in = 0.5 * a;
        const double b_in = b * std::pow(0.5, alpha);
        double shell = 0.0;
        const double dz = 2.0 * a / m;
        const double ds = 2.0 * b / m;
        std::array<int, 3> idx{0, 0, 0};
        std::size_t cells = 1;
        for (int ax = 0; ax < d; ++ax) cells *= static_cast<std::size_t>(m);
        for (std::size_t flat = 0; flat < cells; ++flat) {
            std::size_t rem = flat;
            for (int ax = d - 1; ax >= 0; --ax) {
                idx[ax] = static_cast<int>(rem % m);
                rem /= m;
            }
            double r2 = 0.0;
            bool inside_space = true;
            for (int ax = 0; ax < d; ++ax) {
                const double z = -a + (idx[ax] + 0.5) * dz;
                r2 += z * z;
                if (std::abs(z) > a_in) inside_space = false;
            }
            const double r = std::sqrt(r2);
            for (int it = 0; it < m; ++it) {
                const double s = -b + (it + 0.5) * ds;
                if (inside_space && std::abs(s) <= b_in) continue; // belongs to a deeper shell
                shell += std::pow(std::pow(std::abs(s), 1.0 / alpha) + r, -e);
            }
        }
        shell *= std::pow(dz, d) * ds;
        total += shell;
        if (level > 4 && shell < 1e-10 * total) break;
        a = a_in;
        b = b_in;
    }
    return total / (std::pow(h, d) * w);
}

// Average of (tpart + |z|)^{-e} over the spatial cell [-h/2,h/2]^d alone,
// used for time slabs whose |t-s|^{1/alpha} offset is too small for the
// midpoint rule to see past the r = 0 spike. Nested dyadic shells again;
// once the inner cube is small against tpart the integrand is flat there
// and a single midpoint closes the recursion.
double spatial_cell_average(int d, double e, double h, double tpart) {
    const int m = 8;
    double total = 0.0;
    double a = 0.5 * h;
    for (int level = 0; level < 200; ++level) {
        const double a_in = 0.5 * a;
        const double dz = 2.0 * a / m;
        double shell = 0.0;
        std::array<int, 3> idx{0, 0, 0};
        std::size_t cells = 1;
        for (int ax = 0; ax < d; ++ax) cells *= static_cast<std::size_t>(m);
        for (std::size_t flat = 0; flat < cells; ++flat) {
            std::size_t rem = flat;
            for (int ax = d - 1; ax >= 0; --ax) {
                idx[ax] = static_cast<int>(rem % m);
                rem /= m;
            }
            double r2 = 0.0;
            bool inside = true;
            for (int ax = 0; ax < d; ++ax) {
                const double z = -a + (idx[ax] + 0.5) * dz;
                r2 += z * z;
                if (std::abs(z) > a_in) inside = false;
            }
            if (inside) continue;
            shell += std::pow(tpart + std::sqrt(r2), -e);
        }
        shell *= std::pow(dz, d);
        total += shell;
        const double core = std::pow(2.0 * a_in, d) * std::pow(tpart + 0.5 * a_in, -e);
        if (a_in < 0.25 * tpart || core < 1e-10 * total) {
            total += core;
            break;
        }
        a = a_in;
    }
    return total / std::pow(h, d);
}

} // namespace

ScalarTrajectory parabolic_riesz(const ScalarTrajectory& tr, double beta, double alpha) {
    validate(tr);
    const SpectralGrid& g = tr.grid;
    const int d = g.dim();
    if (!(beta > 0.0 && beta < d + alpha))
        throw std::invalid_argument("parabolic_riesz: beta out of range (0, d + alpha)");
    if (!(alpha >= 1.0 && alpha <= 2.0))
        throw std::invalid_argument("parabolic_riesz: alpha must lie in [1, 2]");

    const double e = d + alpha - beta;
    const std::size_t nt = tr.size();
    const std::size_t nodes = g.node_count();
    const double h = g.spacing();
    const std::vector<double> w = trapezoid_weights(tr.times);

    // per-axis periodic min-image distances
    const int n = g.n();
    std::vector<double> axis_dist(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) axis_dist[static_cast<std::size_t>(i)] = h * std::min(i, n - i);

    // forward transforms of all snapshots (raw, unnormalized)
    std::vector<std::vector<std::complex<double>>> psi_hat(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        psi_hat[j].assign(nodes, 0.0);
        for (std::size_t i = 0; i < nodes; ++i) psi_hat[j][i] = tr.snapshots[j].samples[i];
        fft_forward_inplace(g, psi_hat[j]);
    }

    ScalarTrajectory out(g, tr.times);
    std::vector<std::complex<double>> kernel(nodes);
    std::vector<std::complex<double>> acc(nodes);

    const double conv_norm = g.cell_volume() / static_cast<double>(nodes);
    for (std::size_t i = 0; i < nt; ++i) {
        std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
        for (std::size_t j = 0; j < nt; ++j) {
            const double dt = std::abs(tr.times[i] - tr.times[j]);
            const double tpart = std::pow(dt, 1.0 / alpha);
            for (std::size_t o = 0; o < nodes; ++o) {
                const auto idx = g.unflatten(o);
                double r2 = 0.0;
                for (int a = 0; a < d; ++a) {
                    const double da = axis_dist[static_cast<std::size_t>(idx[a])];
                    r2 += da * da;
                }
                kernel[o] = std::pow(tpart + std::sqrt(r2), -e);
            }
            if (i == j)
                kernel[0] = singular_cell_average(d, alpha, e, h, std::max(w[i], 1e-14));
            else if (tpart < h)
                kernel[0] = spatial_cell_average(d, e, h, tpart);
            fft_forward_inplace(g, kernel);
            const double wj = w[j];
            for (std::size_t o = 0; o < nodes; ++o) acc[o] += wj * kernel[o] * psi_hat[j][o];
        }
        fft_inverse_inplace(g, acc);
        for (std::size_t o = 0; o < nodes; ++o) out.snapshots[i].samples[o] = acc[o].real() * conv_norm;
    }
    return out;
}

} // namespace fracbq
