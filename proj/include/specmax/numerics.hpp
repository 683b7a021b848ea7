#pragma once

// Small numerical utilities shared across the library: smooth bumps and
// transition profiles, fixed Gauss-Legendre panels, an adaptive trapezoid
// rule, and least-squares slope fitting on log-log data.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace specmax {

inline constexpr double kPi = 3.14159265358979323846;

// exp(-1/(1-u^2)) on (-1,1), zero outside. C-infinity with flat ends.
inline double standard_bump(double u) {
    const double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s);
}

// exp(-1/(v(1-v))) on (0,1), zero outside. Used for monotone transitions.
inline double edge_bump(double v) {
    const double s = v * (1.0 - v);
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s);
}

namespace detail {

// 32-point Gauss-Legendre nodes/weights on [-1,1] (positive half; mirror for
// the rest). Enough for every smooth integrand we meet here.
inline const std::array<double, 16>& gl32_nodes() {
    static const std::array<double, 16> x = {
        0.0483076656877383162348126, 0.1444719615827964934851864,
        0.2392873622521370745446032, 0.3318686022821276497799168,
        0.4213512761306353453641194, 0.5068999089322293900237475,
        0.5877157572407623290407455, 0.6630442669302152009751152,
        0.7321821187402896803874267, 0.7944837959679424069630973,
        0.8493676137325699701336930, 0.8963211557660521239653072,
        0.9349060759377396891709191, 0.9647622555875064307738119,
        0.9856115115452683354001750, 0.9972638618494815635449811};
    return x;
}
inline const std::array<double, 16>& gl32_weights() {
    static const std::array<double, 16> w = {
        0.0965400885147278005667648, 0.0956387200792748594190820,
        0.0938443990808045656391802, 0.0911738786957638847128686,
        0.0876520930044038111427715, 0.0833119242269467552221991,
        0.0781938957870703064717409, 0.0723457941088485062253994,
        0.0658222227763618468376501, 0.0586840934785355471452836,
        0.0509980592623761761961632, 0.0428358980222266806568786,
        0.0342738629130214331026877, 0.0253920653092620594557526,
        0.0162743947309056706051706, 0.0070186100094700966004071};
    return w;
}

} // namespace detail

// Integral of f over [a,b] by a single 32-point Gauss-Legendre panel.
template <typename F>
double gauss_legendre(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const auto& xs = detail::gl32_nodes();
    const auto& ws = detail::gl32_weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc += ws[i] * (f(mid - half * xs[i]) + f(mid + half * xs[i]));
    return acc * half;
}

// Normalized antiderivative of the standard bump scaled to support
// [-radius, radius]: 0 below, 1 above, strictly increasing in between.
// Deterministic (fixed quadrature), so telescoping sums cancel exactly.
class BumpCdf {
public:
    explicit BumpCdf(double radius = 0.25)
        : radius_(radius),
          total_(gauss_legendre([](double u) { return standard_bump(u); }, -1.0, 1.0)) {}

    double radius() const { return radius_; }

    double operator()(double x) const {
        if (x <= -radius_) return 0.0;
        if (x >= radius_) return 1.0;
        const double part = gauss_legendre([](double u) { return standard_bump(u); },
                                           -1.0, x / radius_);
        return part / total_;
    }

    // density: integral 1 over [-radius, radius]
    double density(double x) const {
        return standard_bump(x / radius_) / (total_ * radius_);
    }

private:
    double radius_;
    double total_;
};

// Monotone C-infinity step: 0 for s<=0, 1 for s>=1, all derivatives vanish at
// both ends.
class SmoothStep {
public:
    SmoothStep()
        : total_(gauss_legendre([](double v) { return edge_bump(v); }, 0.0, 1.0)) {}

    double operator()(double s) const {
        if (s <= 0.0) return 0.0;
        if (s >= 1.0) return 1.0;
        return gauss_legendre([](double v) { return edge_bump(v); }, 0.0, s) / total_;
    }

    double derivative(double s) const { return edge_bump(s) / total_; }

private:
    double total_;
};

// Adaptive trapezoid with Richardson-style refinement. `singular` is set when
// a non-finite sample is encountered; the offending subinterval is skipped.
struct AdaptiveResult {
    double value = 0.0;
    bool singular = false;
};

template <typename F>
AdaptiveResult adaptive_trapezoid(F&& f, double a, double b, double rel_tol,
                                  int max_depth = 24) {
    AdaptiveResult out;
    struct Frame {
        double a, b, fa, fb, coarse;
        int depth;
    };
    auto safe = [&](double x, bool& bad) {
        double v = f(x);
        if (!std::isfinite(v)) {
            bad = true;
            return 0.0;
        }
        return v;
    };
    bool bad = false;
    double fa = safe(a, bad), fb = safe(b, bad);
    if (bad) {
        out.singular = true;
        return out;
    }
    std::vector<Frame> stack{{a, b, fa, fb, 0.5 * (b - a) * (fa + fb), 0}};
    const double scale_hint = std::abs(stack[0].coarse);
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        bool local_bad = false;
        const double m = 0.5 * (fr.a + fr.b);
        const double fm = safe(m, local_bad);
        if (local_bad) {
            out.singular = true;
            continue;
        }
        const double left = 0.25 * (fr.b - fr.a) * (fr.fa + fm);
        const double right = 0.25 * (fr.b - fr.a) * (fm + fr.fb);
        const double fine = left + right;
        const double tol =
            rel_tol * std::max({std::abs(fine), scale_hint, 1e-300});
        if (fr.depth >= max_depth || std::abs(fine - fr.coarse) <= 3.0 * tol) {
            // trapezoid Richardson correction
            out.value += fine + (fine - fr.coarse) / 3.0;
        } else {
            stack.push_back({fr.a, m, fr.fa, fm, left, fr.depth + 1});
            stack.push_back({m, fr.b, fm, fr.fb, right, fr.depth + 1});
        }
    }
    return out;
}

// Least-squares line fit y = slope*x + intercept with slope standard error.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            rss += r * r;
        }
        fit.slope_stderr = std::sqrt(rss / (double(n - 2) * sxx));
    }
    return fit;
}

// Fit of log(y) against log(x); points with y <= 0 are rejected.
inline LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    lx.reserve(x.size());
    ly.reserve(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_loglog: nonpositive data");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return fit_line(lx, ly);
}

} // namespace specmax
