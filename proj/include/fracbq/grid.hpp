#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fracbq {

// Uniform periodic lattice on [0, L)^d with the same even sample count n on
// every axis. Wavenumbers per axis are (2*pi/L) * m with integer index
// m in {-n/2+1, ..., n/2}; the FFT bin i maps to m = i for i <= n/2 and
// m = i - n above. The bin i = n/2 is the (unpaired) Nyquist index.
class SpectralGrid {
public:
    SpectralGrid() = default;
    SpectralGrid(int dim, int samples_per_axis, double side_length);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double side() const { return side_; }

    std::size_t node_count() const { return nodes_; }
    double spacing() const { return side_ / n_; }
    double cell_volume() const;

    // Signed integer frequency for a flat per-axis FFT bin.
    int freq_index(int bin) const { return bin <= n_ / 2 ? bin : bin - n_; }
    bool is_nyquist(int bin) const { return bin == n_ / 2; }
    double wavenumber(int bin) const;

    // Row-major flattening, axis 0 slowest.
    std::size_t flatten(const std::array<int, 3>& idx) const;
    std::array<int, 3> unflatten(std::size_t flat) const;

    // Physical coordinate of a node.
    std::array<double, 3> coordinate(std::size_t flat) const;

    // Full wavenumber vector of a mode (flat index into the FFT cube).
    std::array<double, 3> wavevector(std::size_t flat) const;
    // Squared euclidean length of the wavevector.
    double wavevector_sq(std::size_t flat) const;

    bool operator==(const SpectralGrid& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && side_ == o.side_;
    }
    bool operator!=(const SpectralGrid& o) const { return !(*this == o); }

private:
    int dim_ = 0;
    int n_ = 0;
    double side_ = 0.0;
    std::size_t nodes_ = 0;
};

// Validates d in {1,2,3}, n even and >= 4, L > 0.
SpectralGrid make_grid(int dim, int samples_per_axis, double side_length);

} // namespace fracbq
