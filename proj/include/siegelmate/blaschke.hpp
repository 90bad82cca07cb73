#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "siegelmate/cf.hpp"
#include "siegelmate/circle_map.hpp"

namespace siegelmate {

// Roots of z^2 + (conj(kappa) - 3) z + kappa = 0, kappa = e^{2 pi i t},
// labeled so |a| <= 1 <= |b|. At integer t the double root a = b = 1.
std::pair<cplx, cplx> solve_ab(double t);

// Degree-3 Blaschke product with superattracting fixed points at 0 and infinity
// and a double critical point at z = 1:
//     Q^t(z) = e^{2 pi i t} z^2 (z - 3) / (1 - 3 z).
// Restricted to the unit circle it is a critical circle map with critical
// value angle t.
struct PetersenModel {
    double t;

    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;
    cplx second_deriv(cplx z) const;
    // Coefficients c3 z^3 + c2 z^2 + c1 z + c0 of eval(z) = w after clearing
    // denominators.
    std::array<cplx, 4> preimage_cubic(cplx w) const;
    // Canonical lift displacement at the critical point x = 0.
    double lift_anchor() const { return t; }
};

// Degree-3 Blaschke product
//     B(z) = lambda z (z-a)/(1-conj(a) z) (z-b)/(1-conj(b) z),
//     lambda = e^{-2 pi i nu} / (a b),
// fixing 0 and infinity with multipliers e^{-2 pi i nu} and e^{2 pi i nu}, a
// double critical point at z = 1, and a critical circle map on the unit circle.
struct BlaschkeCubic {
    double t;
    double nu;
    cplx kappa;   // e^{2 pi i t} = a b
    cplx a, b;    // |a| <= 1 <= |b|, a + b = 3 - conj(kappa)
    cplx lambda;  // unit modulus
    cplx zeta() const { return a + b; }

    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;
    cplx second_deriv(cplx z) const;
    std::array<cplx, 4> preimage_cubic(cplx w) const;
    double lift_anchor() const { return -(nu + t); }

    cplx multiplier_at_zero() const;      // e^{-2 pi i nu}
    cplx multiplier_at_infinity() const;  // e^{2 pi i nu}
    // Finite critical points: z = 1 (double) and a mirror pair c, 1/conj(c).
    std::vector<cplx> critical_points() const;
};

// Throws DegenerateModelError when t is an integer (degree collapse).
BlaschkeCubic build_B(double t, double nu);

struct CriticalResiduals {
    double first;   // |B'(1)|
    double second;  // |B''(1)|
};
CriticalResiduals critical_structure_check(const BlaschkeCubic& model);
CriticalResiduals critical_structure_check(const PetersenModel& model);

CircleLift make_lift(const PetersenModel& model, int grid = 4096);
CircleLift make_lift(const BlaschkeCubic& model, int grid = 4096);

struct SolveOptions {
    int scan_samples = 512;
    long probe_iters = 100000;
    long confirm_iters = 1000000;
    int cf_agreement_depth = 5;
    double t_tol = 1e-7;
    int lift_grid = 4096;
    // Restrict the scan to a sub-interval of (0,1) when a bracket is known.
    double t_lo = 0.0, t_hi = 1.0;
};

struct Bracket {
    double t_lo, t_hi;
    double g_lo, g_hi;  // objective values at the ends
};

struct SolveResult {
    double t;
    RotationEstimate rotation;
    double target_unreduced;
    std::vector<Bracket> brackets;        // all sign changes seen on the scan
    std::vector<std::pair<double, double>> scan;  // (t, unreduced rotation)
};

// Tune t so the circle rotation number matches theta. The objective is the
// unreduced lift displacement, which runs between exactly known endpoint
// values; only continuity is guaranteed, so every bracket found on the scan is
// reported and the first is refined by bisection.
SolveResult solve_t_petersen(const ContinuedFraction& theta, const SolveOptions& opts = {});
SolveResult solve_t_mating(const ContinuedFraction& theta, const ContinuedFraction& nu,
                           const SolveOptions& opts = {});

}  // namespace siegelmate
