#pragma once

// The multiplier families under study and their bookkeeping: closed-form
// values and derivatives, class parameters (alpha, beta, lambda), support
// predicates, smooth support cutoffs, and the tabulated transform of the
// oscillatory convolution kernel e^{i|x|^a}/(1+|x|)^b.

#include "specmax/grid.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace specmax {

struct Multiplier {
    std::function<Complex(double)> value;
    // closed-form derivative; empty means "numeric" (scans fall back to
    // central differences and flag intervals containing singular samples)
    std::function<Complex(double)> derivative;
    std::function<bool(double)> support; // wherever false, value is 0

    double alpha = 0.0;
    double beta = 0.0;
    double lambda = 1.0;
    std::optional<double> claimed_bound;
    std::string name;

    bool has_closed_derivative() const { return static_cast<bool>(derivative); }
    Complex operator()(double xi) const { return value(xi); }
};

struct Multiplier2D {
    std::function<Complex(double, double)> value;
    std::function<Complex(double, double)> d1, d2, d12;
    std::function<bool(double, double)> support;
    std::array<double, 2> alpha = {0.0, 0.0};
    std::array<double, 2> beta = {0.0, 0.0};
    std::array<double, 2> lambda = {1.0, 1.0};
    std::string name;

    Complex operator()(double xi1, double xi2) const { return value(xi1, xi2); }
};

// e^{i|xi|^alpha} (1+xi^2)^{-beta/2}
Multiplier make_miyachi(double alpha, double beta);

// |xi|^{-beta}; evaluation at xi = 0 throws for beta > 0 (offset grids avoid it)
Multiplier make_fractional(double beta);

// e^{i t xi^2} (1+xi^2)^{-beta/2}; the time unit absorbs the transform
// convention's 2*pi factors so t = 1 coincides with make_miyachi(2, beta).
// Class parameters (2, beta, t^{-1/2}).
Multiplier make_schrodinger(double t, double beta);

// Multiply by a smooth cutoff vanishing where |xi|^alpha <= lambda^alpha and
// equal to one where |xi|^alpha >= 2 lambda^alpha, so the support condition
// of the class holds exactly. No-op for alpha = 0.
Multiplier with_class_support(const Multiplier& m, double alpha, double lambda = 1.0);

struct KabSpec {
    double a;
    double b;

    // throws std::domain_error outside a > 0, a != 1, 1 - a/2 <= b < 1
    static KabSpec checked(double a, double b);

    double alpha() const { return a / (a - 1.0); }
    double beta() const { return (a / 2.0 + b - 1.0) / (a - 1.0); }
    double p0() const { return a / (a + b - 1.0); }
};

// Transform of the sampled kernel e^{i|x|^a}/(1+|x|)^b on the given 1D grid,
// damped by a smooth window over the outer 5% of the domain. The returned
// multiplier interpolates the table linearly between lattice frequencies and
// carries the numeric-derivative marker.
Multiplier make_kab_multiplier(const KabSpec& k, const GridSpec& grid);

// m(xi1, xi2) = m1(xi1) m2(xi2), with closed-form partials when the factors
// have closed-form derivatives.
Multiplier2D make_tensor_2d(const Multiplier& m1, const Multiplier& m2);

// (f(x+h) - f(x-h)) / 2h
Complex central_difference(const std::function<Complex(double)>& f, double x, double h);

} // namespace specmax
