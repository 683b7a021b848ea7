#include "specmax/variation.hpp"

#include "specmax/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specmax {
namespace {

// |m'| as a real integrand, falling back to central differences when no
// closed form is available. Exceptions and non-finite values surface as NaN
// so the adaptive rule can flag the interval.
std::function<double(double)> abs_derivative(const Multiplier& m) {
    if (m.has_closed_derivative()) {
        auto d = m.derivative;
        return [d](double xi) -> double {
            try {
                return std::abs(d(xi));
            } catch (const std::exception&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
    }
    auto v = m.value;
    return [v](double xi) -> double {
        const double h = 1e-6 * std::max(1.0, std::abs(xi));
        try {
            return std::abs(central_difference(v, xi, h));
        } catch (const std::exception&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
}

struct IntervalScan {
    double sup = 0.0;
    bool flagged = false;
};

// sup over i_samples sliding subintervals I of [R, 2R] (and their mirror
// images) of int_I |m'|.
IntervalScan scan_block(const std::function<double(double)>& dmag, double R,
                        double ell, int i_samples) {
    IntervalScan out;
    ell = std::min(ell, R);
    const int slots = std::max(1, i_samples);
    for (int i = 0; i < slots; ++i) {
        const double t =
            slots == 1 ? R : R + (R - ell) * double(i) / double(slots - 1);
        for (int side = 0; side < 2; ++side) {
            const double a = side == 0 ? t : -(t + ell);
            const double b = side == 0 ? t + ell : -t;
            AdaptiveResult r = adaptive_trapezoid(dmag, a, b, 1e-4);
            if (r.singular) out.flagged = true;
            out.sup = std::max(out.sup, r.value);
        }
    }
    return out;
}

double safe_size_sample(const Multiplier& m, double xi, double beta, bool& flagged) {
    try {
        const Complex v = m.value(xi);
        const double mag = std::abs(v);
        if (!std::isfinite(mag)) {
            flagged = true;
            return 0.0;
        }
        return std::pow(std::abs(xi), beta) * mag;
    } catch (const std::exception&) {
        flagged = true;
        return 0.0;
    }
}

// stability across the two decades on the critical side: largest R when
// alpha >= 0 (membership fails toward infinity), smallest R when alpha < 0
std::vector<const BlockScan*> critical_blocks(const std::vector<BlockScan>& blocks,
                                              double alpha) {
    std::vector<const BlockScan*> out;
    if (blocks.empty()) return out;
    double lo, hi;
    if (alpha >= 0.0) {
        hi = blocks.back().R;
        lo = hi / 100.0;
    } else {
        lo = blocks.front().R;
        hi = lo * 100.0;
    }
    for (const auto& b : blocks)
        if (b.R >= lo * (1 - 1e-12) && b.R <= hi * (1 + 1e-12)) out.push_back(&b);
    return out;
}

} // namespace

MembershipReport check_membership(const Multiplier& m, double alpha, double beta,
                                  double lambda, int r_samples, int i_samples,
                                  double r_lo, double r_hi) {
    if (!(lambda > 0.0))
        throw std::domain_error("check_membership: lambda must be positive");
    if (r_samples < 2) throw std::domain_error("check_membership: need r_samples >= 2");

    MembershipReport rep;
    rep.r_samples = r_samples;
    rep.i_samples = i_samples;

    // admissible R range: {R^alpha >= lambda^alpha}
    if (r_lo == 0.0 && r_hi == 0.0) {
        const double span = std::pow(2.0, 12.0);
        if (alpha > 0.0) {
            r_lo = lambda;
            r_hi = lambda * span;
        } else if (alpha < 0.0) {
            r_lo = lambda / span;
            r_hi = lambda;
        } else {
            r_lo = lambda / 64.0;
            r_hi = lambda * 64.0;
        }
    }
    if (alpha > 0.0) r_lo = std::max(r_lo, lambda);
    if (alpha < 0.0) r_hi = std::min(r_hi, lambda);
    if (!(r_lo < r_hi))
        throw std::domain_error("check_membership: empty admissible R range");
    rep.r_lo = r_lo;
    rep.r_hi = r_hi;

    auto dmag = abs_derivative(m);

    const double ratio = std::pow(r_hi / r_lo, 1.0 / double(r_samples - 1));
    for (int s = 0; s < r_samples; ++s) {
        const double R = r_lo * std::pow(ratio, double(s));
        BlockScan blk;
        blk.R = R;
        blk.interval_length = std::min(std::pow(R / lambda, -alpha) * R, R);
        IntervalScan scan = scan_block(dmag, R, blk.interval_length, i_samples);
        blk.sup_derivative_integral = scan.sup;
        blk.weighted = std::pow(R, beta) * scan.sup;
        blk.flagged = scan.flagged;
        if (scan.flagged) {
            std::ostringstream f;
            f << "singular derivative sample inside a scanned interval of [" << R
              << ", " << 2 * R << "]";
            rep.flags.push_back(f.str());
        }
        bool size_flag = false;
        for (int q = 0; q < 16; ++q) {
            const double xi = R * std::pow(2.0, (double(q) + 0.5) / 16.0);
            blk.size_bound = std::max(blk.size_bound, safe_size_sample(m, xi, beta, size_flag));
            blk.size_bound = std::max(blk.size_bound, safe_size_sample(m, -xi, beta, size_flag));
        }
        if (size_flag) rep.flags.push_back("non-finite multiplier sample in size scan");
        rep.blocks.push_back(blk);

        rep.size_bound = std::max(rep.size_bound, blk.size_bound);
        rep.var_bound = std::max(rep.var_bound, blk.weighted);
    }

    // support consistency: the predicate must not admit points outside the
    // class support set
    if (alpha != 0.0) {
        const bool outer = alpha > 0.0;
        for (int q = 0; q < 32 && rep.support_ok; ++q) {
            const double xi =
                outer ? lambda * double(q + 1) / 34.0 : lambda * (1.0 + double(q + 1));
            try {
                if (std::abs(m.value(xi)) > 1e-14) rep.support_ok = false;
            } catch (const std::exception&) {
                rep.support_ok = false;
            }
        }
    }

    auto crit = critical_blocks(rep.blocks, alpha);
    double lo_v = std::numeric_limits<double>::infinity(), hi_v = 0.0;
    double lo_s = std::numeric_limits<double>::infinity(), hi_s = 0.0;
    std::vector<double> xs, ys;
    for (const BlockScan* b : crit) {
        if (b->weighted > 0.0) {
            lo_v = std::min(lo_v, b->weighted);
            hi_v = std::max(hi_v, b->weighted);
            xs.push_back(b->R);
            ys.push_back(b->weighted);
        }
        lo_s = std::min(lo_s, b->size_bound);
        hi_s = std::max(hi_s, b->size_bound);
    }
    if (xs.size() >= 3) {
        LineFit fit = fit_loglog(xs, ys);
        rep.growth_exponent = fit.slope;
        rep.growth_stderr = fit.slope_stderr;
    }
    const double var_spread = (lo_v > 0.0 && hi_v > 0.0) ? hi_v / lo_v - 1.0 : 0.0;
    const double size_spread = (lo_s > 0.0 && hi_s > 0.0) ? hi_s / lo_s - 1.0 : 0.0;
    rep.decade_variation = std::max(var_spread, size_spread);
    rep.consistent = rep.decade_variation < 0.25;
    return rep;
}

MembershipReport2D check_membership_2d(const Multiplier2D& m,
                                       std::array<double, 2> alpha,
                                       std::array<double, 2> beta,
                                       int r_samples, int i_samples) {
    MembershipReport2D rep;

    auto axis_range = [&](int a) -> std::pair<double, double> {
        const double span = std::pow(2.0, 8.0);
        if (alpha[static_cast<std::size_t>(a)] > 0.0) return {1.0, span};
        if (alpha[static_cast<std::size_t>(a)] < 0.0) return {1.0 / span, 1.0};
        return {1.0 / 16.0, 16.0};
    };
    auto [lo1, hi1] = axis_range(0);
    auto [lo2, hi2] = axis_range(1);

    auto geometric = [](double lo, double hi, int n) {
        std::vector<double> v;
        const double ratio = std::pow(hi / lo, 1.0 / double(n - 1));
        for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(ratio, double(i)));
        return v;
    };
    const auto R1s = geometric(lo1, hi1, r_samples);
    const auto R2s = geometric(lo2, hi2, r_samples);

    // mixed size bound over a sample lattice of both axes
    for (double R1 : R1s)
        for (double R2 : R2s)
            for (int s1 : {-1, 1})
                for (int s2 : {-1, 1}) {
                    const double x1 = s1 * R1 * 1.37, x2 = s2 * R2 * 1.37;
                    const double v = std::abs(m.value(x1, x2));
                    if (std::isfinite(v))
                        rep.size_bound = std::max(
                            rep.size_bound, std::pow(std::abs(x2), beta[1]) *
                                                std::pow(std::abs(x1), beta[0]) * v);
                    else
                        rep.flags.push_back("non-finite sample in 2D size scan");
                }

    // one-axis derivative conditions: freeze the other coordinate at sampled
    // values, weight by its size factor, and reuse the 1D machinery
    auto axis_scan = [&](int axis) -> double {
        double sup = 0.0;
        const auto& others = axis == 0 ? R2s : R1s;
        for (double other_mag : others)
            for (int side : {-1, 1}) {
                const double frozen = side * other_mag * 1.19;
                Multiplier slice;
                if (axis == 0) {
                    if (!m.d1) continue;
                    auto d = m.d1;
                    slice.value = [d, frozen](double xi) { return d(xi, frozen); };
                } else {
                    if (!m.d2) continue;
                    auto d = m.d2;
                    slice.value = [d, frozen](double xi) { return d(frozen, xi); };
                }
                // slice.value already IS the partial derivative; integrate it
                auto dmag = [&slice](double xi) { return std::abs(slice.value(xi)); };
                const auto& Rs = axis == 0 ? R1s : R2s;
                const double a = alpha[static_cast<std::size_t>(axis)];
                const double bexp = beta[static_cast<std::size_t>(axis)];
                const double bother = beta[static_cast<std::size_t>(1 - axis)];
                for (double R : Rs) {
                    const double ell = std::min(std::pow(R, -a) * R, R);
                    IntervalScan sc = scan_block(dmag, R, ell, i_samples);
                    if (sc.flagged) rep.flags.push_back("singular sample in 2D axis scan");
                    sup = std::max(sup, std::pow(std::abs(frozen), bother) *
                                            std::pow(R, bexp) * sc.sup);
                }
            }
        return sup;
    };
    rep.var_bound_axis1 = axis_scan(0);
    rep.var_bound_axis2 = axis_scan(1);

    // mixed condition: iterated integrals of |d12| over subinterval pairs
    std::vector<double> mixed_table;
    if (m.d12) {
        auto d12 = m.d12;
        for (double R1 : R1s) {
            const double ell1 = std::min(std::pow(R1, -alpha[0]) * R1, R1);
            for (double R2 : R2s) {
                const double ell2 = std::min(std::pow(R2, -alpha[1]) * R2, R2);
                double sup_pair = 0.0;
                const int slots = std::max(1, i_samples / 2);
                for (int i = 0; i < slots; ++i) {
                    const double t1 =
                        slots == 1 ? R1 : R1 + (R1 - ell1) * double(i) / double(slots - 1);
                    for (int j = 0; j < slots; ++j) {
                        const double t2 = slots == 1
                                              ? R2
                                              : R2 + (R2 - ell2) * double(j) / double(slots - 1);
                        auto inner = [&](double xi2) {
                            AdaptiveResult r = adaptive_trapezoid(
                                [&](double xi1) { return std::abs(d12(xi1, xi2)); }, t1,
                                t1 + ell1, 1e-3);
                            return r.value;
                        };
                        AdaptiveResult outer = adaptive_trapezoid(inner, t2, t2 + ell2, 1e-3);
                        sup_pair = std::max(sup_pair, outer.value);
                    }
                }
                const double weighted =
                    std::pow(R2, beta[1]) * std::pow(R1, beta[0]) * sup_pair;
                rep.var_bound_mixed = std::max(rep.var_bound_mixed, weighted);
                mixed_table.push_back(weighted);
            }
        }
    } else {
        rep.flags.push_back("mixed derivative unavailable; condition skipped");
    }

    // support consistency on the product set
    for (int a = 0; a < 2; ++a) {
        if (alpha[static_cast<std::size_t>(a)] == 0.0) continue;
        const bool outer = alpha[static_cast<std::size_t>(a)] > 0.0;
        for (int q = 0; q < 8 && rep.support_ok; ++q) {
            const double bad = outer ? double(q + 1) / 10.0 : 2.0 + double(q);
            const double x1 = a == 0 ? bad : 4.0;
            const double x2 = a == 0 ? 4.0 : bad;
            if (std::abs(m.value(x1, x2)) > 1e-14) rep.support_ok = false;
        }
    }

    // stability verdict over the mixed table (the most stringent condition)
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double v : mixed_table)
        if (v > 0.0) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    rep.decade_variation = (hi > 0.0 && std::isfinite(lo)) ? hi / lo - 1.0 : 0.0;
    rep.consistent = rep.decade_variation < 0.25;
    return rep;
}

double r_variation(const Multiplier& m, double a, double b, double r, int n_points) {
    if (r < 1.0) throw std::domain_error("r_variation: r must be >= 1");
    if (n_points < 2) throw std::domain_error("r_variation: need at least two points");
    std::vector<Complex> vals(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double x = a + (b - a) * double(i) / double(n_points - 1);
        vals[static_cast<std::size_t>(i)] = m.value(x);
    }
    if (r == 1.0) {
        double acc = 0.0;
        for (int i = 0; i + 1 < n_points; ++i)
            acc += std::abs(vals[static_cast<std::size_t>(i + 1)] -
                            vals[static_cast<std::size_t>(i)]);
        return acc;
    }
    // best[j]: max of sum |increment|^r over subsets of 0..j ending at j
    std::vector<double> best(static_cast<std::size_t>(n_points), 0.0);
    for (int j = 1; j < n_points; ++j) {
        double bj = 0.0;
        for (int i = 0; i < j; ++i) {
            const double inc = std::abs(vals[static_cast<std::size_t>(j)] -
                                        vals[static_cast<std::size_t>(i)]);
            bj = std::max(bj, best[static_cast<std::size_t>(i)] + std::pow(inc, r));
        }
        best[static_cast<std::size_t>(j)] = bj;
    }
    return std::pow(best[static_cast<std::size_t>(n_points - 1)], 1.0 / r);
}

double r_variation_exhaustive(const Multiplier& m, double a, double b, double r,
                              int n_points) {
    if (r < 1.0) throw std::domain_error("r_variation: r must be >= 1");
    if (n_points < 2 || n_points > 18)
        throw std::domain_error("r_variation_exhaustive: need 2 <= n_points <= 18");
    std::vector<Complex> vals(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double x = a + (b - a) * double(i) / double(n_points - 1);
        vals[static_cast<std::size_t>(i)] = m.value(x);
    }
    const int interior = n_points - 2;
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << interior); ++mask) {
        double acc = 0.0;
        Complex prev = vals[0];
        for (int i = 0; i < interior; ++i) {
            if (mask & (1u << i)) {
                acc += std::pow(std::abs(vals[static_cast<std::size_t>(i + 1)] - prev), r);
                prev = vals[static_cast<std::size_t>(i + 1)];
            }
        }
        acc += std::pow(std::abs(vals[static_cast<std::size_t>(n_points - 1)] - prev), r);
        best = std::max(best, acc);
    }
    return std::pow(best, 1.0 / r);
}

} // namespace specmax
