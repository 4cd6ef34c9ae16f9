#include "fracbq/kernel.hpp"

#include "fracbq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace fracbq {
namespace {

constexpr double kDirectSumThreshold = 1e-11;

double round_up_pow2(double x) {
    double p = 1.0;
    while (p < x) p *= 2.0;
    return p;
}

int round_up_pow2_int(double x) {
    int p = 4;
    while (p < x) p *= 2;
    return p;
}

} // namespace

KernelGrid KernelGrid::auto_size(int dim, double alpha, double t, double degree,
                                 const std::vector<std::array<double, 3>>& points) {
    double extent = 0.0;
    for (const auto& p : points)
        for (int a = 0; a < dim; ++a) extent = std::max(extent, std::abs(p[a]));
    const double scale = std::pow(t, 1.0 / alpha);

    // Tail images decay like |x|^{-(d+alpha+degree)} for alpha < 2; 384
    // diffusion lengths keep their sum below ~1e-7 of the peak for alpha
    // down to 1. Near alpha = 2 the tail is exponential and a much smaller
    // torus already suffices.
    const double tail_factor = alpha > 1.95 ? 48.0 : 384.0;
    KernelGrid g;
    g.side = round_up_pow2(std::max({8.0 * extent, tail_factor * scale, 16.0}));

    // Keep modes up to the radius where exp(-t k^alpha) ~ 1e-12, plus slack
    // for a polynomially growing symbol.
    const double kcut = std::pow(27.7 / t, 1.0 / alpha) * (1.0 + 0.25 * std::max(0.0, degree));
    const double need = kcut * g.side / std::numbers::pi;
    const int cap = dim >= 3 ? 256 : 4096;
    g.n = std::max(256, std::min(cap, round_up_pow2_int(need)));
    return g;
}

KernelSample kernel_physical(const MultiplierSpec& spec, int dim, double alpha, double t,
                             const std::vector<std::array<double, 3>>& points,
                             std::optional<KernelGrid> grid) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_physical: t must be positive");
    if (!(alpha >= 1.0 && alpha <= 2.0))
        throw std::invalid_argument("kernel_physical: alpha must lie in [1, 2]");
    if (points.empty()) throw std::invalid_argument("kernel_physical: no points given");

    KernelSample out;
    out.alpha = alpha;
    out.degree = spec.degree;
    out.t = t;
    out.points = points;
    out.grid = grid ? *grid : KernelGrid::auto_size(dim, alpha, t, spec.degree, points);

    const SpectralGrid g = make_grid(dim, out.grid.n, out.grid.side);
    const std::size_t count = g.node_count();

    // Mode weights of the continuum Fourier integral sampled on the lattice;
    // 1/L^d is the ((2 pi)^{-d} * mode spacing^d) quadrature measure.
    std::vector<double> weight(count);
    const double measure = 1.0 / std::pow(out.grid.side, dim);
    double wmax = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        double w;
        if (i == 0) {
            w = spec.zero_mode == ZeroModePolicy::Identity ? 1.0 : 0.0;
        } else {
            const auto k = g.wavevector(i);
            double k2 = 0.0;
            for (int a = 0; a < dim; ++a) k2 += k[a] * k[a];
            const std::complex<double> sym = spec.symbol(k, dim);
            if (std::abs(sym.imag()) > 1e-12 * (1.0 + std::abs(sym.real())))
                throw std::invalid_argument("kernel_physical: symbol must be real for a real kernel");
            w = sym.real() * std::exp(-t * std::pow(k2, alpha / 2.0));
        }
        weight[i] = w;
        wmax = std::max(wmax, std::abs(w));
    }

    // Fast path applies when every point sits on a lattice node.
    const double h = g.spacing();
    const double L = out.grid.side;
    bool on_lattice = true;
    std::vector<std::size_t> node_of(points.size());
    for (std::size_t p = 0; p < points.size() && on_lattice; ++p) {
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < dim; ++a) {
            double x = std::fmod(points[p][a], L);
            if (x < 0) x += L;
            const double bins = x / h;
            const double nearest = std::round(bins);
            if (std::abs(bins - nearest) > 1e-9) {
                on_lattice = false;
                break;
            }
            idx[a] = static_cast<int>(nearest) % g.n();
        }
        node_of[p] = g.flatten(idx);
    }

    out.values.assign(points.size(), 0.0);
    if (on_lattice) {
        std::vector<std::complex<double>> buf(count);
        for (std::size_t i = 0; i < count; ++i) buf[i] = weight[i] * measure;
        fft_inverse_inplace(g, buf);
        for (std::size_t p = 0; p < points.size(); ++p) out.values[p] = buf[node_of[p]].real();
        return out;
    }

    // Direct cosine sum over the modes that carry weight. Symbols here are
    // real and even, so the imaginary parts cancel exactly.
    struct Mode {
        std::array<double, 3> k;
        double w;
    };
    std::vector<Mode> modes;
    const double floor_w = kDirectSumThreshold * wmax;
    for (std::size_t i = 0; i < count; ++i)
        if (std::abs(weight[i]) > floor_w || i == 0) modes.push_back({g.wavevector(i), weight[i]});

    parallel_for(points.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            double acc = 0.0;
            for (const Mode& m : modes) {
                double phase = 0.0;
                for (int a = 0; a < dim; ++a) phase += m.k[a] * points[p][a];
                acc += m.w * std::cos(phase);
            }
            out.values[p] = acc * measure;
        }
    });
    return out;
}

double gaussian_heat_kernel(int dim, double t, double r) {
    return std::pow(4.0 * std::numbers::pi * t, -0.5 * dim) * std::exp(-r * r / (4.0 * t));
}

double poisson_kernel(int dim, double t, double r) {
    // c_d = Gamma((d+1)/2) / pi^{(d+1)/2}
    const double cd = std::tgamma(0.5 * (dim + 1)) / std::pow(std::numbers::pi, 0.5 * (dim + 1));
    return cd * t / std::pow(t * t + r * r, 0.5 * (dim + 1));
}

std::vector<std::array<double, 3>> centered_point_grid(int dim, int count, double spacing) {
    std::vector<std::array<double, 3>> pts;
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(count);
    pts.reserve(total);
    const int half = count / 2;
    std::array<int, 3> idx{0, 0, 0};
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % count) - half;
            rem /= count;
        }
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a) x[a] = spacing * idx[a];
        pts.push_back(x);
    }
    return pts;
}

void write_kernel_csv(const std::string& path, const std::vector<KernelSample>& samples, int dim) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_kernel_csv: cannot open " + path);
    os << "t";
    for (int a = 0; a < dim; ++a) os << ",x" << a;
    os << ",value,self_similar_value\n";
    os.precision(17);
    for (const auto& s : samples) {
        const double norm = std::pow(s.t, (dim + s.degree) / s.alpha);
        for (std::size_t p = 0; p < s.points.size(); ++p) {
            os << s.t;
            for (int a = 0; a < dim; ++a) os << ',' << s.points[p][a];
            os << ',' << s.values[p] << ',' << norm * s.values[p] << '\n';
        }
    }
}

} // namespace fracbq
