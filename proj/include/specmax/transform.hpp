#pragma once

// Spectral transforms and the operators built directly on them: symbol
// application, Hilbert transform, half-line frequency projections, pointwise
// modulation, circular convolution and Riemann-sum Lp norms.
//
// Conventions (fixed for the whole library):
//   forward:  F(xi_k) = h * sum_j f(x_j) e^{-2 pi i x_j xi_k}
//   inverse:  f(x_j)  = (1/L) * sum_k F(xi_k) e^{+2 pi i x_j xi_k}
// per axis, with xi_k = (k + offset)/L on the grid's frequency lattice.
// The pair is exactly inverse for any offset, and Parseval reads
//   h * sum |f|^2 = (1/L) * sum |F|^2.

#include "specmax/grid.hpp"

#include <functional>

namespace specmax {

using Symbol1D = std::function<Complex(double)>;
using Symbol2D = std::function<Complex(double, double)>;

SpectralField forward_transform(const SampledField& f);
SampledField inverse_transform(const SpectralField& F);

// T_m f = inverse(m . forward(f)). Throws if the symbol evaluates to a
// non-finite value at a needed frequency (the message names it).
SampledField apply_spectral_symbol(const SampledField& f, const Symbol1D& symbol);
SampledField apply_spectral_symbol(const SampledField& f, const Symbol2D& symbol);

// Spectral action -i sign(xi); sign(0) = 0 on unshifted grids. 1D only.
SampledField hilbert_transform(const SampledField& f);

// Zero every coefficient with frequency < xi0 along the axis. Idempotent
// bitwise on coefficients.
SpectralField halfline_projection(const SpectralField& F, double xi0, int axis = 0);
SampledField halfline_projection(const SampledField& f, double xi0, int axis = 0);

// Pointwise multiplication by e^{-2 pi i x xi0} along an axis. Shifts the
// frequency lattice by -xi0, so the result lives on a retuned grid whose
// offset differs by the sub-bin part of xi0*L. Exact: no leakage.
SampledField modulate(const SampledField& f, double xi0, int axis = 0);

// Riemann-sum norm (cell_volume * sum |f|^p)^(1/p); max norm for p = inf.
double lp_norm(const SampledField& f, double p);
double lp_norm(const ArrayXd& values, const GridSpec& grid, double p);

// Circular convolution (g * w)(x_c) = cell_volume * sum_j g(x_c - x_j) w(x_j),
// computed by FFT. Offsets are ignored (pure sample-space operation).
ArrayXcd circular_convolve(const GridSpec& grid, const ArrayXcd& g, const ArrayXcd& w);

} // namespace specmax
