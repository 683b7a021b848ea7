#include "specmax/transform.hpp"

#include "specmax/numerics.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <sstream>
#include <vector>

namespace specmax {
namespace {

// Axis transform between sample order (j = 0..N-1) and spectral slots stored
// lowest frequency first (slot p holds k = p - N/2). Phases:
//   F_p = h * (-1)^(p - N/2) * e^{i pi off} * DFT[f_j e^{-2 pi i j off/N}]_{(p+N/2) mod N}
// and the inverse unwinds each factor.
class AxisFft {
public:
    AxisFft(Index n, double length, double offset_bins)
        : n_(n), h_(length / double(n)), inv_l_(1.0 / length), off_(offset_bins) {
        twiddle_.resize(static_cast<std::size_t>(n));
        for (Index j = 0; j < n; ++j) {
            const double ang = -2.0 * kPi * double(j) * off_ / double(n);
            twiddle_[static_cast<std::size_t>(j)] = Complex(std::cos(ang), std::sin(ang));
        }
        const double ang0 = kPi * off_;
        phase0_ = Complex(std::cos(ang0), std::sin(ang0));
        buf_in_.resize(static_cast<std::size_t>(n));
        buf_out_.resize(static_cast<std::size_t>(n));
    }

    // strided forward: samples -> spectral slots
    void forward(const Complex* in, Index stride, Complex* out, Index out_stride) {
        for (Index j = 0; j < n_; ++j)
            buf_in_[static_cast<std::size_t>(j)] =
                in[j * stride] * twiddle_[static_cast<std::size_t>(j)];
        fft_.fwd(buf_out_, buf_in_);
        const Index half = n_ / 2;
        for (Index p = 0; p < n_; ++p) {
            const Index k = p - half;
            const Index bin = (p + half) % n_;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            out[p * out_stride] =
                h_ * sign * phase0_ * buf_out_[static_cast<std::size_t>(bin)];
        }
    }

    // strided inverse: spectral slots -> samples
    void inverse(const Complex* in, Index stride, Complex* out, Index out_stride) {
        const Index half = n_ / 2;
        const Complex phase0_conj = std::conj(phase0_);
        for (Index p = 0; p < n_; ++p) {
            const Index k = p - half;
            const Index bin = (p + half) % n_;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            buf_in_[static_cast<std::size_t>(bin)] = in[p * stride] * sign * phase0_conj;
        }
        fft_.inv(buf_out_, buf_in_); // scales by 1/N
        const double scale = double(n_) * inv_l_;
        for (Index j = 0; j < n_; ++j)
            out[j * out_stride] = scale * buf_out_[static_cast<std::size_t>(j)] *
                                  std::conj(twiddle_[static_cast<std::size_t>(j)]);
    }

private:
    Index n_;
    double h_, inv_l_, off_;
    Complex phase0_;
    std::vector<Complex> twiddle_;
    std::vector<Complex> buf_in_, buf_out_;
    Eigen::FFT<double> fft_;
};

ArrayXcd transform_all_axes(const GridSpec& g, const ArrayXcd& data, bool forward) {
    ArrayXcd out = data;
    if (g.dim() == 1) {
        AxisFft fft(g.points(0), g.length(0), g.offset_bins(0));
        ArrayXcd tmp(out.size());
        if (forward)
            fft.forward(out.data(), 1, tmp.data(), 1);
        else
            fft.inverse(out.data(), 1, tmp.data(), 1);
        return tmp;
    }
    const Index n0 = g.points(0), n1 = g.points(1);
    ArrayXcd tmp = out;
    {
        AxisFft fft(n1, g.length(1), g.offset_bins(1));
        for (Index i = 0; i < n0; ++i) {
            if (forward)
                fft.forward(out.data() + i * n1, 1, tmp.data() + i * n1, 1);
            else
                fft.inverse(out.data() + i * n1, 1, tmp.data() + i * n1, 1);
        }
    }
    {
        AxisFft fft(n0, g.length(0), g.offset_bins(0));
        for (Index j = 0; j < n1; ++j) {
            if (forward)
                fft.forward(tmp.data() + j, n1, out.data() + j, n1);
            else
                fft.inverse(tmp.data() + j, n1, out.data() + j, n1);
        }
    }
    return out;
}

} // namespace

SpectralField forward_transform(const SampledField& f) {
    f.check_shape();
    return SpectralField(f.grid, transform_all_axes(f.grid, f.values, true));
}

SampledField inverse_transform(const SpectralField& F) {
    return SampledField(F.grid, transform_all_axes(F.grid, F.coefficients, false));
}

SampledField apply_spectral_symbol(const SampledField& f, const Symbol1D& symbol) {
    if (f.grid.dim() != 1)
        throw std::invalid_argument("apply_spectral_symbol: 1D symbol on a 2D field");
    SpectralField F = forward_transform(f);
    for (Index i = 0; i < F.coefficients.size(); ++i) {
        const double xi = f.grid.freq(0, i);
        const Complex m = symbol(xi);
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
            std::ostringstream msg;
            msg << "apply_spectral_symbol: symbol not finite at frequency " << xi;
            throw std::domain_error(msg.str());
        }
        F.coefficients[i] *= m;
    }
    SampledField out = inverse_transform(F);
    out.kind = f.kind == FieldKind::Weight ? FieldKind::Signal : f.kind;
    return out;
}

SampledField apply_spectral_symbol(const SampledField& f, const Symbol2D& symbol) {
    if (f.grid.dim() != 2)
        throw std::invalid_argument("apply_spectral_symbol: 2D symbol on a 1D field");
    SpectralField F = forward_transform(f);
    const Index n0 = f.grid.points(0), n1 = f.grid.points(1);
    for (Index i0 = 0; i0 < n0; ++i0) {
        const double xi0 = f.grid.freq(0, i0);
        for (Index i1 = 0; i1 < n1; ++i1) {
            const double xi1 = f.grid.freq(1, i1);
            const Complex m = symbol(xi0, xi1);
            if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
                std::ostringstream msg;
                msg << "apply_spectral_symbol: symbol not finite at frequency ("
                    << xi0 << ", " << xi1 << ")";
                throw std::domain_error(msg.str());
            }
            F.coefficients[f.grid.flat(i0, i1)] *= m;
        }
    }
    SampledField out = inverse_transform(F);
    out.kind = f.kind == FieldKind::Weight ? FieldKind::Signal : f.kind;
    return out;
}

SampledField hilbert_transform(const SampledField& f) {
    if (f.grid.dim() != 1)
        throw std::invalid_argument("hilbert_transform: only defined on 1D grids");
    SpectralField F = forward_transform(f);
    for (Index i = 0; i < F.coefficients.size(); ++i) {
        const double xi = f.grid.freq(0, i);
        const double s = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
        F.coefficients[i] *= Complex(0.0, -s);
    }
    SampledField out = inverse_transform(F);
    out.kind = f.kind;
    return out;
}

SpectralField halfline_projection(const SpectralField& F, double xi0, int axis) {
    if (!std::isfinite(xi0))
        throw std::invalid_argument("halfline_projection: threshold must be finite");
    SpectralField out = F;
    const GridSpec& g = F.grid;
    if (g.dim() == 1) {
        if (axis != 0) throw std::invalid_argument("halfline_projection: axis out of range");
        for (Index i = 0; i < out.coefficients.size(); ++i)
            if (g.freq(0, i) < xi0) out.coefficients[i] = Complex(0, 0);
        return out;
    }
    if (axis < 0 || axis > 1)
        throw std::invalid_argument("halfline_projection: axis out of range");
    const Index n0 = g.points(0), n1 = g.points(1);
    for (Index i0 = 0; i0 < n0; ++i0)
        for (Index i1 = 0; i1 < n1; ++i1) {
            const double xi = axis == 0 ? g.freq(0, i0) : g.freq(1, i1);
            if (xi < xi0) out.coefficients[g.flat(i0, i1)] = Complex(0, 0);
        }
    return out;
}

SampledField halfline_projection(const SampledField& f, double xi0, int axis) {
    SampledField out = inverse_transform(halfline_projection(forward_transform(f), xi0, axis));
    out.kind = f.kind;
    return out;
}

SampledField modulate(const SampledField& f, double xi0, int axis) {
    const GridSpec& g = f.grid;
    if (axis < 0 || axis >= g.dim())
        throw std::invalid_argument("modulate: axis out of range");
    ArrayXcd vals = f.values;
    if (g.dim() == 1) {
        for (Index j = 0; j < vals.size(); ++j) {
            const double ang = -2.0 * kPi * g.coord(0, j) * xi0;
            vals[j] *= Complex(std::cos(ang), std::sin(ang));
        }
    } else {
        const Index n0 = g.points(0), n1 = g.points(1);
        for (Index i0 = 0; i0 < n0; ++i0)
            for (Index i1 = 0; i1 < n1; ++i1) {
                const double x = axis == 0 ? g.coord(0, i0) : g.coord(1, i1);
                const double ang = -2.0 * kPi * x * xi0;
                vals[g.flat(i0, i1)] *= Complex(std::cos(ang), std::sin(ang));
            }
    }
    // spectrum moved down by xi0: new lattice offset = old - xi0*L (mod 1)
    const double shift_bins = xi0 * g.length(axis);
    GridSpec retuned = g.with_offset_bins(axis, g.offset_bins(axis) - shift_bins);
    return SampledField(retuned, std::move(vals), f.kind);
}

double lp_norm(const ArrayXd& values, const GridSpec& grid, double p) {
    if (p < 1.0) throw std::domain_error("lp_norm: p must be >= 1");
    if (std::isinf(p)) return values.abs().maxCoeff();
    if (p == 1.0) return grid.cell_volume() * values.abs().sum();
    if (p == 2.0) return std::sqrt(grid.cell_volume() * values.square().sum());
    return std::pow(grid.cell_volume() * values.abs().pow(p).sum(), 1.0 / p);
}

double lp_norm(const SampledField& f, double p) {
    if (p < 1.0) throw std::domain_error("lp_norm: p must be >= 1");
    if (std::isinf(p)) return f.values.abs().maxCoeff();
    if (p == 2.0) return std::sqrt(f.grid.cell_volume() * f.values.abs2().sum());
    return std::pow(f.grid.cell_volume() * f.values.abs().pow(p).sum(), 1.0 / p);
}

namespace {

// raw cyclic convolution c_m = sum_j a_{(m-j) mod n} b_j along one axis
void raw_cyclic_convolve_axis(std::vector<Complex>& a, std::vector<Complex>& b) {
    Eigen::FFT<double> fft;
    std::vector<Complex> A, B;
    fft.fwd(A, a);
    fft.fwd(B, b);
    for (std::size_t i = 0; i < A.size(); ++i) A[i] *= B[i];
    fft.inv(a, A); // Eigen scales inv by 1/n, yielding the plain cyclic sum
}

} // namespace

ArrayXcd circular_convolve(const GridSpec& grid, const ArrayXcd& g, const ArrayXcd& w) {
    if (g.size() != grid.size() || w.size() != grid.size())
        throw std::invalid_argument("circular_convolve: size mismatch");
    // Reindex the kernel from coordinates x_j = -L/2 + j h to displacements
    // d*h (wrapped): disp[d] = g[(d + N/2) mod N] per axis. Then
    // (g*w)(x_c) = vol * sum_j disp[(c-j) mod N] w_j, a plain cyclic sum.
    const Index n0 = grid.dim() == 2 ? grid.points(0) : grid.points(0);
    const Index n1 = grid.dim() == 2 ? grid.points(1) : 1;
    ArrayXcd disp(g.size());
    for (Index i0 = 0; i0 < n0; ++i0) {
        const Index s0 = (i0 + n0 / 2) % n0;
        for (Index i1 = 0; i1 < n1; ++i1) {
            const Index s1 = n1 == 1 ? 0 : (i1 + n1 / 2) % n1;
            disp[i0 * n1 + i1] = g[s0 * n1 + s1];
        }
    }
    if (grid.dim() == 1) {
        std::vector<Complex> a(disp.data(), disp.data() + disp.size());
        std::vector<Complex> b(w.data(), w.data() + w.size());
        raw_cyclic_convolve_axis(a, b);
        ArrayXcd out(g.size());
        for (Index i = 0; i < out.size(); ++i) out[i] = a[static_cast<std::size_t>(i)] * grid.cell_volume();
        return out;
    }
    // 2D: cyclic convolution factorizes over axes; run full 2D transforms.
    Eigen::FFT<double> fft;
    auto fft2 = [&](const ArrayXcd& src, bool fwd) {
        ArrayXcd tmp(src.size()), out2(src.size());
        std::vector<Complex> line(static_cast<std::size_t>(n1)), res;
        for (Index i0 = 0; i0 < n0; ++i0) {
            for (Index i1 = 0; i1 < n1; ++i1) line[static_cast<std::size_t>(i1)] = src[i0 * n1 + i1];
            if (fwd) fft.fwd(res, line); else fft.inv(res, line);
            for (Index i1 = 0; i1 < n1; ++i1) tmp[i0 * n1 + i1] = res[static_cast<std::size_t>(i1)];
        }
        std::vector<Complex> col(static_cast<std::size_t>(n0));
        for (Index i1 = 0; i1 < n1; ++i1) {
            for (Index i0 = 0; i0 < n0; ++i0) col[static_cast<std::size_t>(i0)] = tmp[i0 * n1 + i1];
            if (fwd) fft.fwd(res, col); else fft.inv(res, col);
            for (Index i0 = 0; i0 < n0; ++i0) out2[i0 * n1 + i1] = res[static_cast<std::size_t>(i0)];
        }
        return out2;
    };
    ArrayXcd A = fft2(disp, true), B = fft2(w, true);
    A *= B;
    ArrayXcd c = fft2(A, false);
    return c * grid.cell_volume();
}

} // namespace specmax
