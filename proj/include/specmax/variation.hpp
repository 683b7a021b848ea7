#pragma once

// Numerical membership scans for the multiplier classes (support, size and
// sub-dyadic derivative-integral conditions, 1D and 2D) and r-variation of a
// sampled multiplier. Verdicts are stability heuristics: a finite supremum
// cannot be certified numerically, so reports always carry the raw tables.

#include "specmax/multiplier.hpp"

#include <string>
#include <vector>

namespace specmax {

struct BlockScan {
    double R = 0.0;                // dyadic block [R, 2R]
    double interval_length = 0.0;  // scanned subinterval length
    double sup_derivative_integral = 0.0; // sup_I int_{+-I} |m'|
    double weighted = 0.0;         // R^beta * sup
    double size_bound = 0.0;       // sup over sampled xi in the block of |xi|^beta |m|
    bool flagged = false;          // singular sample inside some interval
};

struct MembershipReport {
    bool support_ok = true;   // support predicate consistent with the class
    double size_bound = 0.0;  // S_bound: empirical sup |xi|^beta |m(xi)|
    double var_bound = 0.0;   // S_var: empirical sup of weighted integrals
    std::vector<BlockScan> blocks;
    double growth_exponent = 0.0; // log-log slope of weighted vs R, critical decades
    double growth_stderr = 0.0;
    double decade_variation = 0.0; // max/min - 1 across the critical decades
    bool consistent = false;
    std::vector<std::string> flags;
    double r_lo = 0.0, r_hi = 0.0;
    int r_samples = 0, i_samples = 0;
};

// Scan m against class (alpha, beta) at scale lambda. R runs over a geometric
// net of r_samples points spanning [r_lo, r_hi] intersected with the
// admissible set {R : R^alpha >= lambda^alpha}; each dyadic block is scanned
// with i_samples sliding subintervals of length (R/lambda)^{-alpha} R.
// Defaults (r_lo = r_hi = 0) span twelve octaves on the admissible side.
MembershipReport check_membership(const Multiplier& m, double alpha, double beta,
                                  double lambda, int r_samples, int i_samples,
                                  double r_lo = 0.0, double r_hi = 0.0);

struct MembershipReport2D {
    double size_bound = 0.0;              // mixed sup (both axes weighted)
    double var_bound_axis1 = 0.0;         // sup_xi2 |xi2|^b2 { axis-1 scan of d1 m }
    double var_bound_axis2 = 0.0;
    double var_bound_mixed = 0.0;         // double derivative-integral sup
    bool support_ok = true;
    bool consistent = false;
    double decade_variation = 0.0;
    std::vector<std::string> flags;
};

MembershipReport2D check_membership_2d(const Multiplier2D& m,
                                       std::array<double, 2> alpha,
                                       std::array<double, 2> beta,
                                       int r_samples, int i_samples);

// r-variation of m sampled at n_points equispaced points of [a, b]. For
// r = 1 the consecutive telescoping sum (the supremum over refinements);
// for r > 1 the exact maximum over all subsets of the sample points that
// contain both endpoints, by dynamic programming -- a lower bound for the
// continuum supremum. Throws for r < 1.
double r_variation(const Multiplier& m, double a, double b, double r, int n_points);

// exhaustive reference for the same quantity; n_points <= 18
double r_variation_exhaustive(const Multiplier& m, double a, double b, double r,
                              int n_points);

} // namespace specmax
