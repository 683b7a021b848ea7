#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specmax/grid.hpp"
#include "specmax/numerics.hpp"
#include "specmax/transform.hpp"

#include <cmath>
#include <random>

using namespace specmax;

namespace {

ArrayXcd random_complex(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return double(rng() >> 11) * 0x1p-53; };
    ArrayXcd v(n);
    for (Index i = 0; i < n; ++i) v[i] = Complex(uniform() - 0.5, uniform() - 0.5);
    return v;
}

double rel_l2(const ArrayXcd& a, const ArrayXcd& b) {
    return std::sqrt((a - b).abs2().sum() / b.abs2().sum());
}

} // namespace

TEST_CASE("constant field maps to the DC bin") {
    auto g = GridSpec::line(64, 8.0);
    SampledField f(g, ArrayXcd::Constant(64, Complex(1.0, 0.0)));
    SpectralField F = forward_transform(f);
    for (Index i = 0; i < 64; ++i) {
        if (g.freq(0, i) == 0.0)
            CHECK(std::abs(F.coefficients[i] - Complex(8.0, 0.0)) < 1e-12); // = L * 1
        else
            CHECK(std::abs(F.coefficients[i]) < 1e-12);
    }
}

TEST_CASE("pure tone lands in a single bin") {
    auto g = GridSpec::line(64, 8.0);
    ArrayXcd v(64);
    for (Index j = 0; j < 64; ++j) {
        const double ang = 2.0 * kPi * g.coord(0, j) / 8.0;
        v[j] = Complex(std::cos(ang), std::sin(ang));
    }
    SpectralField F = forward_transform(SampledField(g, v));
    int nonzero = 0;
    for (Index i = 0; i < 64; ++i) {
        if (std::abs(F.coefficients[i]) > 1e-10) {
            ++nonzero;
            CHECK(g.freq(0, i) == doctest::Approx(1.0 / 8.0));
        }
    }
    CHECK(nonzero == 1);
}

TEST_CASE("round trip and Parseval at several sizes and offsets") {
    for (Index n : {64, 256, 1024}) {
        for (bool off : {false, true}) {
            auto g = GridSpec::line(n, 16.0, off);
            ArrayXcd v = random_complex(n, 7 + std::uint64_t(n));
            SampledField f(g, v);
            SpectralField F = forward_transform(f);
            SampledField back = inverse_transform(F);
            CHECK(rel_l2(back.values, v) < 1e-12);

            const double phys = g.cell_volume() * v.abs2().sum();
            const double spec = g.freq_step(0) * F.coefficients.abs2().sum();
            CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
        }
    }
}

TEST_CASE("2D round trip and Parseval") {
    auto g = GridSpec::plane(32, 64, 4.0, 8.0, true, false);
    ArrayXcd v = random_complex(g.size(), 99);
    SpectralField F = forward_transform(SampledField(g, v));
    CHECK(rel_l2(inverse_transform(F).values, v) < 1e-12);
    const double phys = g.cell_volume() * v.abs2().sum();
    const double spec = g.freq_step(0) * g.freq_step(1) * F.coefficients.abs2().sum();
    CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
}

TEST_CASE("identity symbol reproduces the field") {
    auto g = GridSpec::line(128, 8.0);
    ArrayXcd v = random_complex(128, 3);
    SampledField f(g, v);
    SampledField out = apply_spectral_symbol(f, [](double) { return Complex(1, 0); });
    CHECK(rel_l2(out.values, v) < 1e-12);
}

TEST_CASE("modulation symbol is a circular shift by one cell") {
    auto g = GridSpec::line(128, 8.0);
    ArrayXcd v = random_complex(128, 4);
    const double x0 = g.cell(0);
    SampledField out = apply_spectral_symbol(
        SampledField(g, v), [x0](double xi) {
            const double ang = -2.0 * kPi * xi * x0;
            return Complex(std::cos(ang), std::sin(ang));
        });
    ArrayXcd shifted(128);
    for (Index j = 0; j < 128; ++j) shifted[j] = v[(j - 1 + 128) % 128];
    CHECK(rel_l2(out.values, shifted) < 1e-12);
}

TEST_CASE("apply_spectral_symbol is linear") {
    auto g = GridSpec::line(256, 8.0, true);
    ArrayXcd u = random_complex(256, 5), v = random_complex(256, 6);
    const Complex a(1.7, -0.3), b(-0.4, 2.1);
    auto sym = [](double xi) { return Complex(std::cos(xi), 0.2 * std::sin(3 * xi)); };
    SampledField lhs = apply_spectral_symbol(SampledField(g, a * u + b * v), sym);
    SampledField ru = apply_spectral_symbol(SampledField(g, u), sym);
    SampledField rv = apply_spectral_symbol(SampledField(g, v), sym);
    CHECK(rel_l2(lhs.values, a * ru.values + b * rv.values) < 1e-12);
}

TEST_CASE("Plancherel contraction: |T_m f|_2 <= max|m| |f|_2") {
    auto g = GridSpec::line(256, 8.0, true);
    ArrayXcd v = random_complex(256, 8);
    auto sym = [](double xi) { return Complex(1.0 / (1.0 + xi * xi), std::sin(xi)); };
    double max_m = 0;
    for (Index i = 0; i < 256; ++i) max_m = std::max(max_m, std::abs(sym(g.freq(0, i))));
    SampledField out = apply_spectral_symbol(SampledField(g, v), sym);
    CHECK(lp_norm(out, 2) <= max_m * lp_norm(SampledField(g, v), 2) * (1 + 1e-12));
}

TEST_CASE("symbol returning non-finite values names the frequency") {
    auto g = GridSpec::line(64, 8.0); // unshifted: xi = 0 is on the lattice
    ArrayXcd v = random_complex(64, 9);
    CHECK_THROWS_WITH_AS(
        apply_spectral_symbol(SampledField(g, v),
                              [](double xi) { return Complex(std::pow(std::abs(xi), -0.5), 0); }),
        doctest::Contains("frequency"), std::domain_error);
}

// Independent oracle: the inverse Fourier integral of m(xi) fhat(xi), with the
// Gaussian's closed-form transform, summed directly over the grid's own
// offset frequency lattice (no FFT, no discrete forward transform).
TEST_CASE("singular symbol |xi|^{-1/2} against direct quadrature of the continuum integral") {
    const Index n = 512;
    const double L = 32.0;
    auto g = GridSpec::line(n, L, true);
    ArrayXcd v(n);
    for (Index j = 0; j < n; ++j) {
        const double x = g.coord(0, j);
        v[j] = Complex(std::exp(-kPi * x * x), 0.0);
    }
    SampledField f(g, v);
    SampledField out =
        apply_spectral_symbol(f, [](double xi) { return Complex(std::pow(std::abs(xi), -0.5), 0); });

    ArrayXcd oracle(n);
    for (Index j = 0; j < n; ++j) {
        const double x = g.coord(0, j);
        Complex acc(0, 0);
        for (Index k = 0; k < n; ++k) {
            const double xi = g.freq(0, k);
            const double fhat = std::exp(-kPi * xi * xi); // transform of e^{-pi x^2}
            const double ang = 2.0 * kPi * xi * x;
            acc += std::pow(std::abs(xi), -0.5) * fhat * Complex(std::cos(ang), std::sin(ang));
        }
        oracle[j] = acc * g.freq_step(0);
    }
    CHECK(rel_l2(out.values, oracle) < 1e-6);
}

TEST_CASE("Hilbert transform maps cos to sin") {
    auto g = GridSpec::line(128, 8.0);
    ArrayXcd c(128), s(128);
    for (Index j = 0; j < 128; ++j) {
        const double ang = 2.0 * kPi * g.coord(0, j) / 8.0;
        c[j] = std::cos(ang);
        s[j] = std::sin(ang);
    }
    SampledField out = hilbert_transform(SampledField(g, c));
    CHECK(rel_l2(out.values, s) < 1e-12);
}

TEST_CASE("Hilbert transform: H^2 = -I off DC, isometry off DC") {
    auto g = GridSpec::line(256, 8.0);
    ArrayXcd v = random_complex(256, 11);
    v -= v.mean(); // mean zero
    SampledField f(g, v);
    SampledField hh = hilbert_transform(hilbert_transform(f));
    CHECK(rel_l2(hh.values, (-v).eval()) < 1e-12);
    CHECK(lp_norm(hilbert_transform(f), 2) == doctest::Approx(lp_norm(f, 2)).epsilon(1e-12));
    CHECK_THROWS_AS(hilbert_transform(SampledField(GridSpec::plane(8, 8, 1, 1),
                                                   ArrayXcd::Zero(64))),
                    std::invalid_argument);
}

TEST_CASE("halfline projection: trivial thresholds") {
    auto g = GridSpec::line(64, 8.0);
    ArrayXcd v = random_complex(64, 12);
    SampledField f(g, v);
    SampledField all = halfline_projection(f, -1e9);
    CHECK(rel_l2(all.values, v) < 1e-13);
    SampledField none = halfline_projection(f, 1e9);
    CHECK(none.values.abs().maxCoeff() < 1e-13);
}

TEST_CASE("halfline projection is bitwise idempotent on coefficients") {
    auto g = GridSpec::line(128, 8.0, true);
    SpectralField F(g, random_complex(128, 13));
    const double xi0 = 0.37;
    SpectralField once = halfline_projection(F, xi0);
    SpectralField twice = halfline_projection(once, xi0);
    for (Index i = 0; i < 128; ++i) {
        CHECK(once.coefficients[i].real() == twice.coefficients[i].real());
        CHECK(once.coefficients[i].imag() == twice.coefficients[i].imag());
    }
}

// U_xi = (I + i M_{-xi} H M_xi)/2 with the modulation retuning the lattice.
TEST_CASE("halfline projection agrees with the modulation-Hilbert identity") {
    const Index n = 256;
    const double L = 16.0;
    auto g = GridSpec::line(n, L);
    ArrayXcd v = random_complex(n, 14);
    SampledField f(g, v);
    for (double xi0 : {0.5 / L, 7.5 / L, -20.5 / L, 3.5 / L}) { // strictly between bins
        SampledField lhs = halfline_projection(f, xi0);
        SampledField mod = modulate(f, xi0);
        SampledField hm = hilbert_transform(mod);
        SampledField back = modulate(hm, -xi0);
        ArrayXcd rhs = 0.5 * (v + Complex(0, 1) * back.values);
        CHECK(rel_l2(lhs.values, rhs) < 1e-10);
    }
}

TEST_CASE("lp norms: constants, indicators, Parseval") {
    auto g = GridSpec::line(64, 8.0);
    SampledField one(g, ArrayXcd::Constant(64, 1.0));
    CHECK(lp_norm(one, 2) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));

    ArrayXcd half = ArrayXcd::Zero(64);
    for (Index j = 0; j < 32; ++j) half[j] = 1.0;
    CHECK(lp_norm(SampledField(g, half), 1) == doctest::Approx(4.0).epsilon(1e-14));

    ArrayXcd v = random_complex(64, 15);
    SampledField f(g, v);
    SpectralField F = forward_transform(f);
    const double spec = g.freq_step(0) * F.coefficients.abs2().sum();
    CHECK(lp_norm(f, 2) * lp_norm(f, 2) == doctest::Approx(spec).epsilon(1e-12));

    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(v.abs().maxCoeff()));
    CHECK_THROWS_AS(lp_norm(f, 0.5), std::domain_error);
}

TEST_CASE("weight kind rejects negative and complex values") {
    auto g = GridSpec::line(64, 8.0);
    ArrayXcd v = ArrayXcd::Constant(64, 1.0);
    v[3] = Complex(-0.5, 0.0);
    CHECK_THROWS_AS(SampledField(g, v, FieldKind::Weight), std::invalid_argument);
    v[3] = Complex(0.5, 0.25);
    CHECK_THROWS_AS(SampledField(g, v, FieldKind::Weight), std::invalid_argument);
}

TEST_CASE("offset grids have no zero frequency sample") {
    auto g = GridSpec::line(64, 8.0, true);
    for (Index i = 0; i < 64; ++i) CHECK(g.freq(0, i) != 0.0);
    CHECK(g.freq_step(0) == doctest::Approx(1.0 / 8.0));
    CHECK(g.max_freq(0) == doctest::Approx(64.0 / 16.0));
}

TEST_CASE("circular convolution against a direct sum") {
    auto g = GridSpec::line(32, 4.0);
    ArrayXcd a = random_complex(32, 21), b = random_complex(32, 22);
    ArrayXcd conv = circular_convolve(g, a, b);
    // direct: conv(x_c) = h * sum_j a(x_c - x_j) b(x_j), displacement wrapped
    for (Index c = 0; c < 32; c += 5) {
        Complex acc(0, 0);
        for (Index j = 0; j < 32; ++j) {
            Index d = ((c - j) % 32 + 32) % 32;           // displacement in cells
            Index slot = (d + 16) % 32;                   // coord index of that displacement
            acc += a[slot] * b[j];
        }
        acc *= g.cell_volume();
        CHECK(std::abs(conv[c] - acc) < 1e-12);
    }
}
