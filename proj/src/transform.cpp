#include "fracbq/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace fracbq {
namespace {

// FFTW planning is not thread safe; execution on distinct buffers is. Plans
// are created in-place with FFTW_UNALIGNED so they can run on any buffer of
// the right shape through fftw_execute_dft.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        const auto key = std::make_tuple(dim, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t count = 1;
        int dims[3] = {n, n, n};
        for (int a = 0; a < dim; ++a) count *= static_cast<std::size_t>(n);
        std::vector<std::complex<double>> scratch(count);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft(dim, dims, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const SpectralGrid& g, std::vector<std::complex<double>>& data, int sign) {
    if (data.size() != g.node_count())
        throw std::invalid_argument("fft: buffer size does not match grid");
    fftw_plan p = PlanCache::instance().get(g.dim(), g.n(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

} // namespace

void fft_forward_inplace(const SpectralGrid& g, std::vector<std::complex<double>>& data) {
    execute(g, data, FFTW_FORWARD);
}

void fft_inverse_inplace(const SpectralGrid& g, std::vector<std::complex<double>>& data) {
    execute(g, data, FFTW_BACKWARD);
}

Spectrum forward_transform(const ScalarField& f) {
    Spectrum s(f.grid);
    for (std::size_t i = 0; i < f.samples.size(); ++i) s.modes[i] = f.samples[i];
    fft_forward_inplace(f.grid, s.modes);
    const double norm = 1.0 / static_cast<double>(f.grid.node_count());
    for (auto& m : s.modes) m *= norm;
    return s;
}

ScalarField inverse_transform(const Spectrum& s) {
    std::vector<std::complex<double>> buf = s.modes;
    fft_inverse_inplace(s.grid, buf);
    ScalarField f(s.grid);
    for (std::size_t i = 0; i < buf.size(); ++i) f.samples[i] = buf[i].real();
    return f;
}

VectorSpectrum forward_transform(const VectorField& f) {
    VectorSpectrum s(f.grid);
    for (int c = 0; c < f.dim(); ++c) s[c] = forward_transform(f[c]);
    return s;
}

VectorField inverse_transform(const VectorSpectrum& s) {
    VectorField f(s.grid);
    for (int c = 0; c < s.grid.dim(); ++c) f[c] = inverse_transform(s[c]);
    return f;
}

void derivative_inplace(Spectrum& s, int axis) {
    const SpectralGrid& g = s.grid;
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("derivative: axis out of range");
    const int n = g.n();
    const std::size_t count = g.node_count();
    // stride of the chosen axis in the row-major layout
    std::size_t stride = 1;
    for (int a = g.dim() - 1; a > axis; --a) stride *= static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < count; ++i) {
        const int bin = static_cast<int>((i / stride) % static_cast<std::size_t>(n));
        if (g.is_nyquist(bin)) {
            s.modes[i] = 0.0;
        } else {
            const double k = g.wavenumber(bin);
            s.modes[i] *= std::complex<double>(0.0, k);
        }
    }
}

ScalarField spectral_derivative(const ScalarField& f, int axis) {
    Spectrum s = forward_transform(f);
    derivative_inplace(s, axis);
    return inverse_transform(s);
}

VectorField gradient(const ScalarField& f) {
    Spectrum s = forward_transform(f);
    VectorField out(f.grid);
    for (int a = 0; a < f.grid.dim(); ++a) {
        Spectrum da = s;
        derivative_inplace(da, a);
        out[a] = inverse_transform(da);
    }
    return out;
}

ScalarField divergence(const VectorField& f) {
    ScalarField out(f.grid);
    for (int a = 0; a < f.dim(); ++a) {
        Spectrum s = forward_transform(f[a]);
        derivative_inplace(s, a);
        axpy(1.0, inverse_transform(s), out);
    }
    return out;
}

int dealias_cutoff(const SpectralGrid& g) {
    return g.n() / 3;
}

void dealias_inplace(Spectrum& s) {
    const SpectralGrid& g = s.grid;
    const int cut = dealias_cutoff(g);
    const std::size_t count = g.node_count();
    for (std::size_t i = 0; i < count; ++i) {
        const auto idx = g.unflatten(i);
        for (int a = 0; a < g.dim(); ++a) {
            if (std::abs(g.freq_index(idx[a])) > cut) {
                s.modes[i] = 0.0;
                break;
            }
        }
    }
}

Spectrum dealias(Spectrum s) {
    dealias_inplace(s);
    return s;
}

ScalarField dealias(const ScalarField& f) {
    Spectrum s = forward_transform(f);
    dealias_inplace(s);
    return inverse_transform(s);
}

VectorField dealias(const VectorField& f) {
    VectorField out(f.grid);
    for (int c = 0; c < f.dim(); ++c) out[c] = dealias(f[c]);
    return out;
}

} // namespace fracbq
