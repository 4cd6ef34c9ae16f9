#include "fracbq/norms.hpp"

#include "fracbq/operators.hpp"
#include "fracbq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace fracbq {
namespace {

void check_exponents(double p, double q) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm: first exponent must be >= 1");
    if (!(q >= p)) throw std::invalid_argument("norm: second exponent must be >= the first");
}

// Distances are binned at half-cell resolution; profiles cumulated over bins
// turn every ball/box sum into one table lookup.
struct BinTable {
    double h_bin = 0.0;
    int nbins = 0;
    std::vector<std::uint16_t> bin; // per offset
    std::vector<double> measure_cum; // cumulative node count * h^d per bin
};

BinTable build_bins(const SpectralGrid& g, bool chebyshev) {
    const int d = g.dim();
    const int n = g.n();
    const double h = g.spacing();
    BinTable bt;
    bt.h_bin = 0.5 * h;
    const double maxdist = 0.5 * g.side() * (chebyshev ? 1.0 : std::sqrt(static_cast<double>(d)));
    bt.nbins = static_cast<int>(maxdist / bt.h_bin) + 2;

    // per-axis min-image distances
    std::vector<double> axis_dist(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) axis_dist[static_cast<std::size_t>(i)] = h * std::min(i, n - i);

    const std::size_t nodes = g.node_count();
    bt.bin.resize(nodes);
    std::vector<double> counts(static_cast<std::size_t>(bt.nbins), 0.0);
    for (std::size_t o = 0; o < nodes; ++o) {
        const auto idx = g.unflatten(o);
        double dist;
        if (chebyshev) {
            dist = 0.0;
            for (int a = 0; a < d; ++a) dist = std::max(dist, axis_dist[static_cast<std::size_t>(idx[a])]);
        } else {
            double s = 0.0;
            for (int a = 0; a < d; ++a) {
                const double da = axis_dist[static_cast<std::size_t>(idx[a])];
                s += da * da;
            }
            dist = std::sqrt(s);
        }
        const int b = std::min(bt.nbins - 1, static_cast<int>(dist / bt.h_bin));
        bt.bin[o] = static_cast<std::uint16_t>(b);
        counts[static_cast<std::size_t>(b)] += 1.0;
    }
    bt.measure_cum.resize(static_cast<std::size_t>(bt.nbins));
    double acc = 0.0;
    const double cell = g.cell_volume();
    for (int b = 0; b < bt.nbins; ++b) {
        acc += counts[static_cast<std::size_t>(b)] * cell;
        bt.measure_cum[static_cast<std::size_t>(b)] = acc;
    }
    return bt;
}

// Mass with dist < rho (ball, strict) or dist <= rho (box; chebyshev lattice
// distances are cell multiples, so the half-cell bins make this exact).
inline double cum_lookup(const double* cum, int nbins, double rho, double h_bin, bool box) {
    if (rho <= 0.0) return 0.0;
    long idx = static_cast<long>(rho / h_bin);
    if (!box) idx -= 1;
    if (idx < 0) return 0.0;
    if (idx >= nbins) idx = nbins - 1;
    return cum[idx];
}

// Accumulates P over nodes around the given center into radial bins.
void accumulate_profile(const SpectralGrid& g, const BinTable& bt, const double* P,
                        const std::array<int, 3>& c, double* prof) {
    const int n = g.n();
    const int d = g.dim();
    std::fill(prof, prof + bt.nbins, 0.0);
    const std::uint16_t* bin = bt.bin.data();
    if (d == 1) {
        for (int d0 = 0; d0 < n; ++d0) {
            int y0 = c[0] + d0;
            if (y0 >= n) y0 -= n;
            prof[bin[d0]] += P[y0];
        }
    } else if (d == 2) {
        for (int d0 = 0; d0 < n; ++d0) {
            int y0 = c[0] + d0;
            if (y0 >= n) y0 -= n;
            const double* Prow = P + static_cast<std::size_t>(y0) * n;
            const std::uint16_t* Brow = bin + static_cast<std::size_t>(d0) * n;
            const int split = n - c[1];
            for (int d1 = 0; d1 < split; ++d1) prof[Brow[d1]] += Prow[c[1] + d1];
            for (int d1 = split; d1 < n; ++d1) prof[Brow[d1]] += Prow[c[1] + d1 - n];
        }
    } else {
        for (int d0 = 0; d0 < n; ++d0) {
            int y0 = c[0] + d0;
            if (y0 >= n) y0 -= n;
            for (int d1 = 0; d1 < n; ++d1) {
                int y1 = c[1] + d1;
                if (y1 >= n) y1 -= n;
                const double* Prow = P + (static_cast<std::size_t>(y0) * n + y1) * n;
                const std::uint16_t* Brow = bin + (static_cast<std::size_t>(d0) * n + d1) * n;
                const int split = n - c[2];
                for (int d2 = 0; d2 < split; ++d2) prof[Brow[d2]] += Prow[c[2] + d2];
                for (int d2 = split; d2 < n; ++d2) prof[Brow[d2]] += Prow[c[2] + d2 - n];
            }
        }
    }
}

struct SupProblem {
    const SpectralGrid* grid = nullptr;
    const std::vector<std::vector<double>>* P = nullptr; // [slice][node], |psi|^p
    std::vector<double> times;    // empty for the static norm
    std::vector<double> tweights; // trapezoid weights, {1} for static
    double p = 0.0;
    double q = 0.0;
    double alpha = 0.0; // only used when parabolic
    RegionVariant variant = RegionVariant::Ball;
    int centers_per_axis = 16;
    int time_stride = 4;
    bool measure_normalized = false;
    bool parabolic = false;
};

double sup_scan(const SupProblem& pr) {
    const SpectralGrid& g = *pr.grid;
    const int d = g.dim();
    const int n = g.n();
    const double h = g.spacing();
    const double cell = g.cell_volume();
    const std::size_t nt = pr.P->size();

    const bool cheb = pr.parabolic && pr.variant == RegionVariant::Box;
    const BinTable bt = build_bins(g, cheb);

    // dyadic radii from one cell up to the covering radius of the full
    // space-time domain, so p = q reproduces the global discrete L^p norm
    const double maxdist = 0.5 * g.side() * (cheb ? 1.0 : std::sqrt(static_cast<double>(d)));
    double cover = maxdist + 2.0 * bt.h_bin;
    double tspan = 0.0;
    if (pr.parabolic && nt > 1) {
        tspan = pr.times.back() - pr.times.front();
        if (pr.variant == RegionVariant::Ball)
            cover = maxdist + std::pow(tspan, 1.0 / pr.alpha) + 2.0 * bt.h_bin;
        else
            cover = std::max(cover, std::pow(tspan, 1.0 / pr.alpha));
    }
    std::vector<double> radii{h};
    while (radii.back() < cover) radii.push_back(radii.back() * 2.0);

    const double dims_eff = pr.parabolic ? d + pr.alpha : static_cast<double>(d);
    const double wexp = dims_eff * (1.0 / pr.p - 1.0 / pr.q);
    const double pinv = 1.0 / pr.p;

    // center subgrid; a nonpositive request means every node, which is what
    // makes the sup exactly invariant under lattice translations
    const int stride = pr.centers_per_axis <= 0
                           ? 1
                           : std::max(1, n / std::min(n, pr.centers_per_axis));
    std::vector<int> axis_centers;
    for (int i = 0; i * stride < n; ++i) axis_centers.push_back(i * stride);
    std::size_t n_centers = 1;
    for (int a = 0; a < d; ++a) n_centers *= axis_centers.size();

    std::vector<std::size_t> time_centers;
    if (pr.parabolic) {
        for (std::size_t i = 0; i < nt; i += static_cast<std::size_t>(std::max(1, pr.time_stride)))
            time_centers.push_back(i);
    } else {
        time_centers.push_back(0);
    }

    std::mutex mu;
    double best = 0.0;
    parallel_for(n_centers, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> prof(static_cast<std::size_t>(bt.nbins), 0.0);
        std::vector<double> cums(nt * static_cast<std::size_t>(bt.nbins), 0.0);
        double local_best = 0.0;
        for (std::size_t ci = lo; ci < hi; ++ci) {
            // decode the center from its subgrid index
            std::array<int, 3> c{0, 0, 0};
            std::size_t rem = ci;
            for (int a = d - 1; a >= 0; --a) {
                c[a] = axis_centers[rem % axis_centers.size()];
                rem /= axis_centers.size();
            }
            for (std::size_t i = 0; i < nt; ++i) {
                accumulate_profile(g, bt, (*pr.P)[i].data(), c, prof.data());
                double acc = 0.0;
                double* cum = cums.data() + i * static_cast<std::size_t>(bt.nbins);
                for (int b = 0; b < bt.nbins; ++b) {
                    acc += prof[static_cast<std::size_t>(b)] * cell;
                    cum[b] = acc;
                }
            }
            for (std::size_t tc : time_centers) {
                const double t_c = pr.parabolic ? pr.times[tc] : 0.0;
                for (double r : radii) {
                    double S = 0.0;
                    double measure = 0.0;
                    for (std::size_t i = 0; i < nt; ++i) {
                        double rho;
                        if (!pr.parabolic) {
                            rho = r;
                        } else if (pr.variant == RegionVariant::Ball) {
                            rho = r - std::pow(std::abs(t_c - pr.times[i]), 1.0 / pr.alpha);
                        } else {
                            rho = std::abs(t_c - pr.times[i]) <= std::pow(r, pr.alpha) ? r : 0.0;
                        }
                        if (rho <= 0.0) continue;
                        const double* cum = cums.data() + i * static_cast<std::size_t>(bt.nbins);
                        const double mass =
                            cum_lookup(cum, bt.nbins, rho, bt.h_bin, cheb);
                        S += pr.tweights[i] * mass;
                        if (pr.measure_normalized)
                            measure += pr.tweights[i] *
                                       cum_lookup(bt.measure_cum.data(), bt.nbins, rho, bt.h_bin, cheb);
                    }
                    if (S <= 0.0) continue;
                    double value;
                    if (pr.measure_normalized) {
                        if (measure <= 0.0) continue;
                        value = std::pow(r, dims_eff / pr.q) * std::pow(S / measure, pinv);
                    } else {
                        value = std::pow(r, -wexp) * std::pow(S, pinv);
                    }
                    local_best = std::max(local_best, value);
                }
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        best = std::max(best, local_best);
    });
    return best;
}

std::vector<double> power_slice(const ScalarField& f, double p) {
    std::vector<double> P(f.samples.size());
    for (std::size_t i = 0; i < P.size(); ++i) P[i] = std::pow(std::abs(f.samples[i]), p);
    return P;
}

std::vector<double> power_slice(const VectorField& f, double p) {
    std::vector<double> P(f.grid.node_count());
    for (std::size_t i = 0; i < P.size(); ++i) {
        double m2 = 0.0;
        for (const auto& c : f.components) m2 += c.samples[i] * c.samples[i];
        P[i] = std::pow(m2, 0.5 * p);
    }
    return P;
}

template <typename FieldT>
double morrey_impl(const FieldT& f, double p, double q, const MorreyOptions& opts) {
    check_exponents(p, q);
    SupProblem pr;
    std::vector<std::vector<double>> P{power_slice(f, p)};
    pr.grid = &f.grid;
    pr.P = &P;
    pr.tweights = {1.0};
    pr.p = p;
    pr.q = q;
    pr.variant = RegionVariant::Ball;
    pr.centers_per_axis = opts.space_centers_per_axis;
    pr.measure_normalized = opts.measure_normalized;
    pr.parabolic = false;
    return sup_scan(pr);
}

template <typename TrajT>
double parabolic_impl(const TrajT& tr, double p, double q, double alpha, const SupOptions& opts) {
    check_exponents(p, q);
    validate(tr);
    SupProblem pr;
    std::vector<std::vector<double>> P;
    P.reserve(tr.size());
    for (const auto& s : tr.snapshots) P.push_back(power_slice(s, p));
    pr.grid = &tr.grid;
    pr.P = &P;
    pr.times = tr.times;
    pr.tweights = trapezoid_weights(tr.times);
    pr.p = p;
    pr.q = q;
    pr.alpha = alpha;
    pr.variant = opts.variant;
    pr.centers_per_axis = opts.space_centers_per_axis;
    pr.time_stride = opts.time_center_stride;
    pr.measure_normalized = opts.measure_normalized;
    pr.parabolic = true;
    return sup_scan(pr);
}

} // namespace

double morrey_norm(const ScalarField& f, double p, double q, const MorreyOptions& opts) {
    return morrey_impl(f, p, q, opts);
}

double morrey_norm(const VectorField& f, double p, double q, const MorreyOptions& opts) {
    return morrey_impl(f, p, q, opts);
}

double parabolic_morrey_norm(const ScalarTrajectory& tr, double p, double q, double alpha,
                             const SupOptions& opts) {
    return parabolic_impl(tr, p, q, alpha, opts);
}

double parabolic_morrey_norm(const VectorTrajectory& tr, double p, double q, double alpha,
                             const SupOptions& opts) {
    return parabolic_impl(tr, p, q, alpha, opts);
}

namespace {

template <typename FieldT>
double besov_impl(const FieldT& f, double beta, double alpha, const BesovOptions& opts) {
    if (!(beta > 0.0)) throw std::invalid_argument("thermic_besov_norm: beta must be positive");
    double best = 0.0;
    const double step = std::exp2(1.0 / opts.nodes_per_octave);
    for (double t = opts.t_min; t <= opts.t_max * (1.0 + 1e-12); t *= step) {
        const double v = std::pow(t, beta / alpha) * max_abs(heat_propagate(f, t, alpha));
        best = std::max(best, v);
    }
    return best;
}

template <typename FieldT>
TlmResult tlm_impl(const FieldT& f, double sigma, double p, double q, double alpha,
                   const TlmOptions& opts) {
    if (!(sigma < 0.0)) throw std::invalid_argument("tlm_norm: sigma must be negative");
    check_exponents(p, q);
    if (opts.nodes_per_octave < 1)
        throw std::invalid_argument("tlm_norm: need at least 1 node per octave");

    // log-trapezoid quadrature of integral t^{-sigma p/alpha} |heat|^p dt/t
    // on dyadic-fraction nodes t_min 2^{j/npo}, so a lattice dilation shifts
    // the node set onto itself whenever alpha*npo is an integer
    const double octaves = std::log2(opts.t_max / opts.t_min);
    const int m = static_cast<int>(std::lround(octaves * opts.nodes_per_octave)) + 1;
    if (m < 2) throw std::invalid_argument("tlm_norm: quadrature range too narrow");
    const double du = std::numbers::ln2 / opts.nodes_per_octave;
    const double a = -sigma * p / alpha; // positive power of t in the weight
    ScalarField acc(f.grid);             // holds the p-th power of the inner integral
    for (int j = 0; j < m; ++j) {
        const double t = opts.t_min * std::exp2(static_cast<double>(j) / opts.nodes_per_octave);
        const double wu = du * ((j == 0 || j == m - 1) ? 0.5 : 1.0);
        const FieldT ht = heat_propagate(f, t, alpha);
        const std::vector<double> Pj = power_slice(ht, p);
        const double factor = wu * std::pow(t, a);
        for (std::size_t i = 0; i < acc.samples.size(); ++i) acc.samples[i] += factor * Pj[i];
    }
    for (auto& v : acc.samples) v = std::pow(v, 1.0 / p);

    TlmResult res;
    res.value = morrey_norm(acc, p, q, opts.morrey);

    // head: integral_0^{t_min} t^a dt/t <= max|f|^p t_min^a / a
    const double scale = max_abs(f);
    double bound = std::pow(scale, p) * std::pow(opts.t_min, a) / a;
    // tail: the mean survives the heat flow, everything else decays at least
    // at the rate of the lowest nonzero mode
    double mean_mag = 0.0;
    if constexpr (std::is_same_v<FieldT, ScalarField>) {
        mean_mag = std::abs(mean(f));
    } else {
        for (const auto& c : f.components) mean_mag = std::max(mean_mag, std::abs(mean(c)));
    }
    if (mean_mag > 1e-13 * std::max(scale, 1e-300)) {
        bound = std::numeric_limits<double>::infinity();
    } else {
        const double lambda1 = std::pow(2.0 * std::numbers::pi / f.grid.side(), alpha);
        const double M = max_abs(heat_propagate(f, opts.t_max, alpha));
        // Simpson on s in [0, 60/(p lambda1)] of (t_max+s)^{a-1} M^p e^{-p lambda1 s}
        const double smax = 60.0 / (p * lambda1);
        const int ns = 512;
        const double ds = smax / ns;
        double tail = 0.0;
        for (int i = 0; i <= ns; ++i) {
            const double s = i * ds;
            const double w = (i == 0 || i == ns) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            tail += w * std::pow(opts.t_max + s, a - 1.0) * std::exp(-p * lambda1 * s);
        }
        tail *= ds / 3.0 * std::pow(M, p);
        bound += tail;
    }
    res.tail_bound = bound;
    return res;
}

} // namespace

double thermic_besov_norm(const ScalarField& f, double beta, double alpha,
                          const BesovOptions& opts) {
    return besov_impl(f, beta, alpha, opts);
}

double thermic_besov_norm(const VectorField& f, double beta, double alpha,
                          const BesovOptions& opts) {
    return besov_impl(f, beta, alpha, opts);
}

TlmResult tlm_norm(const ScalarField& f, double sigma, double p, double q, double alpha,
                   const TlmOptions& opts) {
    return tlm_impl(f, sigma, p, q, alpha, opts);
}

TlmResult tlm_norm(const VectorField& f, double sigma, double p, double q, double alpha,
                   const TlmOptions& opts) {
    return tlm_impl(f, sigma, p, q, alpha, opts);
}

double sobolev_morrey_norm(const ScalarTrajectory& tr, double smoothing, double p, double q,
                           double alpha, const SupOptions& opts) {
    ScalarTrajectory sm(tr.grid, tr.times);
    for (std::size_t i = 0; i < tr.size(); ++i)
        sm.snapshots[i] = riesz_smoothing(tr.snapshots[i], smoothing);
    return parabolic_morrey_norm(sm, p, q, alpha, opts);
}

double sobolev_morrey_norm(const VectorTrajectory& tr, double smoothing, double p, double q,
                           double alpha, const SupOptions& opts) {
    VectorTrajectory sm(tr.grid, tr.times);
    for (std::size_t i = 0; i < tr.size(); ++i)
        sm.snapshots[i] = riesz_smoothing(tr.snapshots[i], smoothing);
    return parabolic_morrey_norm(sm, p, q, alpha, opts);
}

HolderReport holder_check(const ScalarTrajectory& f, const ScalarTrajectory& g, double p1,
                          double q1, double p2, double q2, double alpha, const SupOptions& opts) {
    if (f.grid != g.grid || f.size() != g.size())
        throw std::invalid_argument("holder_check: trajectories must share grid and times");
    ScalarTrajectory prod(f.grid, f.times);
    for (std::size_t i = 0; i < f.size(); ++i)
        prod.snapshots[i] = pointwise_product(f.snapshots[i], g.snapshots[i]);

    const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
    const double q = 1.0 / (1.0 / q1 + 1.0 / q2);
    HolderReport rep;
    rep.product_norm = parabolic_morrey_norm(prod, p, q, alpha, opts);
    rep.left_norm = parabolic_morrey_norm(f, p1, q1, alpha, opts);
    rep.right_norm = parabolic_morrey_norm(g, p2, q2, alpha, opts);
    const double denom = rep.left_norm * rep.right_norm;
    rep.ratio = denom > 0.0 ? rep.product_norm / denom : 0.0;
    rep.ok = rep.ratio <= 1.0 + 1e-9;
    return rep;
}

} // namespace fracbq
