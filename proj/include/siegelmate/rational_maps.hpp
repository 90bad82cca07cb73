#pragma once

#include <complex>
#include <vector>

#include "siegelmate/blaschke.hpp"
#include "siegelmate/cf.hpp"
#include "siegelmate/circle_map.hpp"

namespace siegelmate {

// Monic Siegel quadratic z -> z^2 + c with a fixed point of multiplier
// e^{2 pi i theta} at alpha = e^{2 pi i theta}/2 and repelling fixed point
// beta = 1 - alpha.
struct SiegelQuadratic {
    double theta;
    cplx c;
    cplx alpha;
    cplx beta;
    bool resonant_warning;  // multiplier numerically a low-order root of unity

    cplx eval(cplx z) const { return z * z + c; }
    cplx deriv(cplx z) const { return 2.0 * z; }
};

SiegelQuadratic f_theta(double theta);

// Quadratic rational map fixing 0, 1, infinity with multipliers e^{2 pi i theta}
// at 0 and e^{2 pi i nu} at infinity:
//     F(z) = z ((1-A) z + A (1-B)) / ((1-A) B z + (1-B)),  A = e^{2 pi i theta},
//     B = e^{2 pi i nu}.
struct QuadRational {
    double theta, nu;
    cplx A, B;
    cplx mu1, mu2, mu3;          // multipliers at 0, infinity, 1
    cplx sigma1, sigma2, sigma3; // elementary symmetric functions of mu_i

    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;
    // w -> 1/F(1/w), the map in the chart at infinity.
    cplx eval_inf_chart(cplx w) const;
    std::vector<cplx> critical_points() const;
};

// Throws DegenerateModelError when theta + nu is an integer (mu1 mu2 = 1).
QuadRational F_normal(double theta, double nu);

struct SigmaCoords {
    cplx mu3, sigma1, sigma2, sigma3;
};
// mu3 = (2 - mu1 - mu2) / (1 - mu1 mu2); sigma_i elementary symmetric.
SigmaCoords sigma_coords(cplx mu1, cplx mu2);

// Quotient of the self-mating by its unit-circle involution:
//     G(z) = 4 z / ((1+z) + E (1-z))^2,  E = e^{2 pi i theta}.
// G fixes 1 with multiplier E; the critical point c1 = (E+1)/(E-1) has orbit
// c1 -> infinity -> 0; the second critical point is c2 = -c1.
struct ChebyshevQuotient {
    double theta;
    cplx E;
    cplx c1, c2;

    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;
};

ChebyshevQuotient chebyshev_G(const ContinuedFraction& theta);
ChebyshevQuotient chebyshev_G(double theta);

struct BetaPoints {
    cplx beta;        // the fixed point outside the closed unit disk
    cplx beta_prime;  // preimage of beta, != beta, outside the unit disk
    cplx mirror;      // the remaining fixed point, inside the unit disk
    cplx multiplier;  // B'(beta)
};

// Fixed points of a cubic Blaschke model other than 0 and infinity, classified
// by position relative to the unit circle. B'(beta) must be repelling.
BetaPoints fixed_points_beta(const BlaschkeCubic& model);

// The fixed points of F(z) = z in the finite plane (exactly {0, 1} for the
// normal form; exposed for the root-count check).
std::vector<cplx> finite_fixed_points(const QuadRational& F);

}  // namespace siegelmate
