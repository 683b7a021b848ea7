#pragma once

// Uniform periodic sampling grids and the fields that live on them.
//
// A grid models the line (or plane) by a period-L torus sampled at N points
// per axis: x_j = -L/2 + j*h with h = L/N. Frequencies form the lattice
// xi_k = (k + offset)/L for k = -N/2 .. N/2-1, where offset in [0,1) shifts
// the lattice in units of one bin. The public constructors expose the
// half-bin flag (offset = 1/2) used with symbols singular at xi = 0;
// fractional offsets arise internally when a field is modulated off the
// lattice.

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace specmax {

using Complex = std::complex<double>;
using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Index = Eigen::Index;

enum class FieldKind { Signal, Weight };

class GridSpec {
public:
    static GridSpec line(Index points, double length, bool half_bin_offset = false) {
        GridSpec g;
        g.dim_ = 1;
        g.n_ = {points, 1};
        g.len_ = {length, 1.0};
        g.offset_ = {half_bin_offset ? 0.5 : 0.0, 0.0};
        g.validate();
        return g;
    }

    static GridSpec plane(Index points0, Index points1, double length0, double length1,
                          bool half_bin_offset0 = false, bool half_bin_offset1 = false) {
        GridSpec g;
        g.dim_ = 2;
        g.n_ = {points0, points1};
        g.len_ = {length0, length1};
        g.offset_ = {half_bin_offset0 ? 0.5 : 0.0, half_bin_offset1 ? 0.5 : 0.0};
        g.validate();
        return g;
    }

    int dim() const { return dim_; }
    Index points(int axis) const { return n_[check_axis(axis)]; }
    double length(int axis) const { return len_[check_axis(axis)]; }
    double cell(int axis) const { return len_[check_axis(axis)] / double(n_[axis]); }
    double cell_volume() const {
        return dim_ == 1 ? cell(0) : cell(0) * cell(1);
    }
    // lattice shift in bins, in [0,1)
    double offset_bins(int axis) const { return offset_[check_axis(axis)]; }
    bool half_bin_offset(int axis) const { return offset_[check_axis(axis)] != 0.0; }

    double freq_step(int axis) const { return 1.0 / len_[check_axis(axis)]; }
    double max_freq(int axis) const {
        return double(n_[check_axis(axis)]) / (2.0 * len_[axis]);
    }

    Index size() const { return dim_ == 1 ? n_[0] : n_[0] * n_[1]; }

    // physical coordinate of sample i on an axis
    double coord(int axis, Index i) const {
        return -0.5 * len_[check_axis(axis)] + double(i) * cell(axis);
    }
    // frequency of spectral slot i (stored lowest-first): (i - N/2 + offset)/L
    double freq(int axis, Index i) const {
        check_axis(axis);
        return (double(i - n_[axis] / 2) + offset_[axis]) / len_[axis];
    }

    Index flat(Index i0, Index i1) const { return i0 * n_[1] + i1; }

    // Any real offset is admitted: a whole-bin part translates the band
    // (the slots then cover [(-N/2+off)/L, (N/2+off)/L)), which is what keeps
    // modulated fields alias-free.
    GridSpec with_offset_bins(int axis, double off) const {
        GridSpec g = *this;
        g.offset_[static_cast<std::size_t>(check_axis(axis))] = off;
        return g;
    }

    GridSpec refined(Index factor = 2) const {
        GridSpec g = *this;
        g.n_[0] *= factor;
        if (dim_ == 2) g.n_[1] *= factor;
        return g;
    }

    bool operator==(const GridSpec& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && len_ == o.len_ && offset_ == o.offset_;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    bool same_sampling(const GridSpec& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && len_ == o.len_;
    }

private:
    void validate() const {
        for (int a = 0; a < dim_; ++a) {
            if (n_[static_cast<std::size_t>(a)] <= 0 || n_[static_cast<std::size_t>(a)] % 2 != 0)
                throw std::invalid_argument("GridSpec: points per axis must be positive and even");
            if (!(len_[static_cast<std::size_t>(a)] > 0.0))
                throw std::invalid_argument("GridSpec: length per axis must be positive");
        }
    }
    int check_axis(int axis) const {
        if (axis < 0 || axis >= dim_)
            throw std::invalid_argument("GridSpec: axis " + std::to_string(axis) +
                                        " out of range for dimension " + std::to_string(dim_));
        return axis;
    }

    int dim_ = 1;
    std::array<Index, 2> n_ = {0, 1};
    std::array<double, 2> len_ = {1.0, 1.0};
    std::array<double, 2> offset_ = {0.0, 0.0};
};

// Function sampled at the grid points, stored flat with axis 0 slowest.
struct SampledField {
    GridSpec grid;
    ArrayXcd values;
    FieldKind kind = FieldKind::Signal;

    SampledField() = default;
    SampledField(GridSpec g, ArrayXcd v, FieldKind k = FieldKind::Signal)
        : grid(std::move(g)), values(std::move(v)), kind(k) {
        check_shape();
        if (kind == FieldKind::Weight) check_weight();
    }

    static SampledField zero(const GridSpec& g, FieldKind k = FieldKind::Signal) {
        return SampledField(g, ArrayXcd::Zero(g.size()), k);
    }

    static SampledField weight(const GridSpec& g, const ArrayXd& w) {
        ArrayXcd v = w.cast<Complex>();
        return SampledField(g, std::move(v), FieldKind::Weight);
    }

    void check_shape() const {
        if (values.size() != grid.size())
            throw std::invalid_argument("SampledField: value count " +
                                        std::to_string(values.size()) +
                                        " does not match grid size " +
                                        std::to_string(grid.size()));
    }
    void check_weight() const {
        for (Index i = 0; i < values.size(); ++i)
            if (values[i].imag() != 0.0 || values[i].real() < 0.0)
                throw std::invalid_argument(
                    "SampledField: weight values must be real and nonnegative");
    }

    // real view; valid for weight-kind fields
    ArrayXd real_values() const { return values.real(); }
};

// Spectral coefficients indexed by the grid's frequency lattice, stored
// lowest frequency first along each axis. Normalization: coefficients carry
// the cell-volume factor, so they approximate continuum Fourier integrals
// and Parseval holds against the Riemann-sum L2 norm.
struct SpectralField {
    GridSpec grid;
    ArrayXcd coefficients;

    SpectralField() = default;
    SpectralField(GridSpec g, ArrayXcd c) : grid(std::move(g)), coefficients(std::move(c)) {
        if (coefficients.size() != grid.size())
            throw std::invalid_argument("SpectralField: coefficient count does not match grid");
    }
};

} // namespace specmax
