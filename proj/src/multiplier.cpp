#include "specmax/multiplier.hpp"

#include "specmax/numerics.hpp"
#include "specmax/transform.hpp"

#include <cmath>
#include <sstream>

namespace specmax {
namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

Complex cis(double ang) { return Complex(std::cos(ang), std::sin(ang)); }

} // namespace

Complex central_difference(const std::function<Complex(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

Multiplier make_miyachi(double alpha, double beta) {
    Multiplier m;
    m.alpha = alpha;
    m.beta = beta;
    m.lambda = 1.0;
    {
        std::ostringstream n;
        n << "miyachi(" << alpha << "," << beta << ")";
        m.name = n.str();
    }
    m.value = [alpha, beta](double xi) -> Complex {
        const double a = std::abs(xi);
        const double env = std::pow(1.0 + xi * xi, -beta / 2.0);
        return env * cis(std::pow(a, alpha));
    };
    m.derivative = [alpha, beta](double xi) -> Complex {
        const double a = std::abs(xi);
        const double env = std::pow(1.0 + xi * xi, -beta / 2.0);
        const Complex val = env * cis(std::pow(a, alpha));
        const Complex phase_term(0.0, alpha * sgn(xi) * std::pow(a, alpha - 1.0));
        const double env_term = -beta * xi / (1.0 + xi * xi);
        return (phase_term + env_term) * val;
    };
    m.support = [](double) { return true; };
    return m;
}

Multiplier make_fractional(double beta) {
    Multiplier m;
    m.alpha = 0.0;
    m.beta = beta;
    m.lambda = 1.0;
    {
        std::ostringstream n;
        n << "fractional(" << beta << ")";
        m.name = n.str();
    }
    m.value = [beta](double xi) -> Complex {
        if (xi == 0.0 && beta > 0.0)
            throw std::domain_error("fractional multiplier singular at xi = 0");
        return Complex(std::pow(std::abs(xi), -beta), 0.0);
    };
    m.derivative = [beta](double xi) -> Complex {
        if (xi == 0.0 && beta > -1.0 && beta != 0.0)
            throw std::domain_error("fractional multiplier derivative singular at xi = 0");
        return Complex(-beta * sgn(xi) * std::pow(std::abs(xi), -beta - 1.0), 0.0);
    };
    m.support = [](double) { return true; };
    return m;
}

Multiplier make_schrodinger(double t, double beta) {
    if (!(t > 0.0)) throw std::domain_error("make_schrodinger: t must be positive");
    Multiplier m;
    m.alpha = 2.0;
    m.beta = beta;
    m.lambda = 1.0 / std::sqrt(t);
    {
        std::ostringstream n;
        n << "schrodinger(t=" << t << ",beta=" << beta << ")";
        m.name = n.str();
    }
    m.value = [t, beta](double xi) -> Complex {
        const double env = std::pow(1.0 + xi * xi, -beta / 2.0);
        return env * cis(t * xi * xi);
    };
    m.derivative = [t, beta](double xi) -> Complex {
        const double env = std::pow(1.0 + xi * xi, -beta / 2.0);
        const Complex val = env * cis(t * xi * xi);
        const Complex phase_term(0.0, 2.0 * t * xi);
        const double env_term = -beta * xi / (1.0 + xi * xi);
        return (phase_term + env_term) * val;
    };
    m.support = [](double) { return true; };
    return m;
}

Multiplier with_class_support(const Multiplier& m, double alpha, double lambda) {
    if (alpha == 0.0) return m; // support condition has no content
    if (!(lambda > 0.0))
        throw std::domain_error("with_class_support: lambda must be positive");

    // transition band in |xi|: between lambda and 2^{1/alpha} lambda
    const double lo = std::min(lambda, std::pow(2.0, 1.0 / alpha) * lambda);
    const double hi = std::max(lambda, std::pow(2.0, 1.0 / alpha) * lambda);
    const bool grows_out = alpha > 0.0; // cutoff rises with |xi| for alpha > 0
    auto step = std::make_shared<SmoothStep>();

    auto psi = [=](double xi) -> double {
        const double a = std::abs(xi);
        if (a <= lo) return grows_out ? 0.0 : 1.0;
        if (a >= hi) return grows_out ? 1.0 : 0.0;
        const double s = (a - lo) / (hi - lo);
        return grows_out ? (*step)(s) : 1.0 - (*step)(s);
    };
    auto dpsi = [=](double xi) -> double {
        const double a = std::abs(xi);
        if (a <= lo || a >= hi) return 0.0;
        const double s = (a - lo) / (hi - lo);
        const double d = step->derivative(s) / (hi - lo) * sgn(xi);
        return grows_out ? d : -d;
    };

    Multiplier out = m;
    out.alpha = alpha;
    out.lambda = lambda;
    out.name = m.name + "|supported";
    auto base_val = m.value;
    out.value = [=](double xi) -> Complex {
        const double p = psi(xi);
        if (p == 0.0) return Complex(0.0, 0.0);
        return p * base_val(xi);
    };
    if (m.has_closed_derivative()) {
        auto base_der = m.derivative;
        out.derivative = [=](double xi) -> Complex {
            const double p = psi(xi);
            const double dp = dpsi(xi);
            Complex acc(0.0, 0.0);
            if (p != 0.0) acc += p * base_der(xi);
            if (dp != 0.0) acc += dp * base_val(xi);
            return acc;
        };
    }
    const bool go = grows_out;
    const double lam = lambda;
    out.support = [go, lam](double xi) {
        return go ? std::abs(xi) >= lam : std::abs(xi) <= lam;
    };
    return out;
}

KabSpec KabSpec::checked(double a, double b) {
    if (!(a > 0.0) || a == 1.0)
        throw std::domain_error("KabSpec: need a > 0 with a != 1");
    if (!(b >= 1.0 - a / 2.0) || !(b < 1.0))
        throw std::domain_error("KabSpec: need 1 - a/2 <= b < 1");
    return KabSpec{a, b};
}

Multiplier make_kab_multiplier(const KabSpec& k, const GridSpec& grid) {
    KabSpec::checked(k.a, k.b); // re-validate
    if (grid.dim() != 1)
        throw std::invalid_argument("make_kab_multiplier: 1D grids only");
    const double L = grid.length(0);
    const double h = grid.cell(0);
    const Index n = grid.points(0);

    // The smooth near-origin part eta*K (eta = 1 on |x|<=1, supported |x|<=2)
    // must lie entirely inside the domain: its mass beyond L/2, relative to
    // its total, must be < 1e-6.
    SmoothStep step;
    auto eta = [&](double x) {
        const double a = std::abs(x);
        if (a <= 1.0) return 1.0;
        if (a >= 2.0) return 0.0;
        return 1.0 - step(a - 1.0);
    };
    auto kernel_mag = [&](double x) { return std::pow(1.0 + std::abs(x), -k.b); };
    const double cutoff_mass =
        2.0 * gauss_legendre([&](double x) { return eta(x) * kernel_mag(x); }, 0.0, 2.0);
    double tail_mass = 0.0;
    if (L / 2.0 < 2.0)
        tail_mass =
            2.0 * gauss_legendre([&](double x) { return eta(x) * kernel_mag(x); }, L / 2.0, 2.0);
    if (!(tail_mass < 1e-6 * cutoff_mass)) {
        std::ostringstream msg;
        msg << "make_kab_multiplier: domain length " << L
            << " truncates the smooth cutoff part of the kernel; need L >= 4";
        throw std::invalid_argument(msg.str());
    }
    // phase resolution at the boundary: local wavelength >= 4 cells
    if (k.a > 1.0) {
        const double dphase = k.a * std::pow(L / 2.0, k.a - 1.0);
        if (2.0 * kPi / dphase < 4.0 * h) {
            std::ostringstream msg;
            msg << "make_kab_multiplier: phase |x|^" << k.a
                << " unresolved at the domain edge; need at least "
                << std::ceil(2.0 * L * dphase / kPi) << " points";
            throw std::invalid_argument(msg.str());
        }
    }

    // sample, damp the outer 5% of the domain, transform
    ArrayXcd samples(n);
    const double edge0 = 0.95 * (L / 2.0);
    const double edge_w = 0.05 * (L / 2.0);
    for (Index j = 0; j < n; ++j) {
        const double x = grid.coord(0, j);
        const double a = std::abs(x);
        Complex val = kernel_mag(x) * cis(std::pow(a, k.a));
        if (a > edge0) val *= 1.0 - step((a - edge0) / edge_w);
        samples[j] = val;
    }
    auto table = std::make_shared<SpectralField>(
        forward_transform(SampledField(grid, samples)));

    Multiplier m;
    m.alpha = k.alpha();
    m.beta = k.beta();
    m.lambda = 1.0;
    {
        std::ostringstream nm;
        nm << "kab(" << k.a << "," << k.b << ")";
        m.name = nm.str();
    }
    const GridSpec g = grid;
    m.value = [table, g](double xi) -> Complex {
        const double slot = xi * g.length(0) - g.offset_bins(0) + double(g.points(0) / 2);
        const Index lo = static_cast<Index>(std::floor(slot));
        const double frac = slot - double(lo);
        auto at = [&](Index i) -> Complex {
            if (i < 0 || i >= g.points(0)) return Complex(0.0, 0.0);
            return table->coefficients[i];
        };
        if (frac < 1e-9) return at(lo);
        if (frac > 1.0 - 1e-9) return at(lo + 1);
        return (1.0 - frac) * at(lo) + frac * at(lo + 1);
    };
    m.derivative = nullptr; // numeric marker
    m.support = [](double) { return true; };
    return m;
}

Multiplier2D make_tensor_2d(const Multiplier& m1, const Multiplier& m2) {
    Multiplier2D out;
    out.alpha = {m1.alpha, m2.alpha};
    out.beta = {m1.beta, m2.beta};
    out.lambda = {m1.lambda, m2.lambda};
    out.name = m1.name + " x " + m2.name;
    auto v1 = m1.value, v2 = m2.value;
    out.value = [v1, v2](double xi1, double xi2) { return v1(xi1) * v2(xi2); };
    if (m1.has_closed_derivative()) {
        auto d1 = m1.derivative;
        out.d1 = [d1, v2](double xi1, double xi2) { return d1(xi1) * v2(xi2); };
    }
    if (m2.has_closed_derivative()) {
        auto d2 = m2.derivative;
        out.d2 = [v1, d2](double xi1, double xi2) { return v1(xi1) * d2(xi2); };
    }
    if (m1.has_closed_derivative() && m2.has_closed_derivative()) {
        auto d1 = m1.derivative, d2 = m2.derivative;
        out.d12 = [d1, d2](double xi1, double xi2) { return d1(xi1) * d2(xi2); };
    }
    auto s1 = m1.support, s2 = m2.support;
    out.support = [s1, s2](double xi1, double xi2) { return s1(xi1) && s2(xi2); };
    return out;
}

} // namespace specmax
