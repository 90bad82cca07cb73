#include "siegelmate/rational_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siegelmate/errors.hpp"
#include "siegelmate/polyroots.hpp"

namespace siegelmate {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
cplx unit(double turns) { return cplx(std::cos(kTau * turns), std::sin(kTau * turns)); }

bool near_root_of_unity(cplx m, int max_order, double tol) {
    cplx p = m;
    for (int q = 1; q <= max_order; ++q) {
        if (std::abs(p - 1.0) < tol) return true;
        p *= m;
    }
    return false;
}
}  // namespace

SiegelQuadratic f_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("theta must lie in (0,1)");
    cplx A = unit(theta);
    cplx alpha = 0.5 * A;
    cplx c = alpha * (1.0 - alpha);
    return {theta, c, alpha, 1.0 - alpha, near_root_of_unity(A, 64, 1e-10)};
}

cplx QuadRational::eval(cplx z) const {
    cplx num = (1.0 - A) * z + A * (1.0 - B);
    cplx den = (1.0 - A) * B * z + (1.0 - B);
    return z * num / den;
}

cplx QuadRational::deriv(cplx z) const {
    cplx p = 1.0 - A, q = A * (1.0 - B), r = (1.0 - A) * B, s = 1.0 - B;
    // F = z (p z + q) / (r z + s); F' = (p r z^2 + 2 p s z + q s) / (r z + s)^2
    cplx den = r * z + s;
    return (p * r * z * z + 2.0 * p * s * z + q * s) / (den * den);
}

cplx QuadRational::eval_inf_chart(cplx w) const {
    // 1/F(1/w) = w (r + s w) / (p + q w)
    cplx p = 1.0 - A, q = A * (1.0 - B), r = (1.0 - A) * B, s = 1.0 - B;
    return w * (r + s * w) / (p + q * w);
}

std::vector<cplx> QuadRational::critical_points() const {
    cplx p = 1.0 - A, q = A * (1.0 - B), r = (1.0 - A) * B, s = 1.0 - B;
    // F'(z) = 0  <=>  p r z^2 + 2 p s z + q s = 0
    return poly_roots({p * r, 2.0 * p * s, q * s});
}

QuadRational F_normal(double theta, double nu) {
    double s = theta + nu;
    double sf = s - std::floor(s);
    if (std::min(sf, 1.0 - sf) < 1e-12)
        throw DegenerateModelError("theta + nu is an integer: mu1 mu2 = 1 degenerates the normal form");
    QuadRational F;
    F.theta = theta;
    F.nu = nu;
    F.A = unit(theta);
    F.B = unit(nu);
    F.mu1 = F.A;
    F.mu2 = F.B;
    auto sc = sigma_coords(F.mu1, F.mu2);
    F.mu3 = sc.mu3;
    F.sigma1 = sc.sigma1;
    F.sigma2 = sc.sigma2;
    F.sigma3 = sc.sigma3;
    return F;
}

SigmaCoords sigma_coords(cplx mu1, cplx mu2) {
    cplx prod = mu1 * mu2;
    if (std::abs(prod - 1.0) < 1e-14)
        throw DegenerateModelError("mu1 mu2 = 1: third multiplier undefined");
    cplx mu3 = (2.0 - mu1 - mu2) / (1.0 - prod);
    return {mu3, mu1 + mu2 + mu3, prod + mu1 * mu3 + mu2 * mu3, prod * mu3};
}

cplx ChebyshevQuotient::eval(cplx z) const {
    cplx u = 1.0 - E;
    if (std::abs(z) > 1e12) return 4.0 / (u * u * z);  // G(infinity) = 0 via the tail
    cplx den = (1.0 + E) + u * z;
    if (std::abs(den) < 1e-14) return cplx(INFINITY, INFINITY);
    return 4.0 * z / (den * den);
}

cplx ChebyshevQuotient::deriv(cplx z) const {
    cplx u = 1.0 - E;
    cplx den = (1.0 + E) + u * z;
    // G' = 4 (den - 2 z u) / den^3
    return 4.0 * (den - 2.0 * z * u) / (den * den * den);
}

ChebyshevQuotient chebyshev_G(double theta) {
    cplx E = unit(theta);
    cplx c1 = (E + 1.0) / (E - 1.0);
    return {theta, E, c1, -c1};
}

ChebyshevQuotient chebyshev_G(const ContinuedFraction& theta) { return chebyshev_G(theta.value()); }

BetaPoints fixed_points_beta(const BlaschkeCubic& model) {
    const cplx lambda = model.lambda, kappa = model.kappa, zeta = model.zeta();
    // B(z) = z clears to z ((lambda - conj(kappa)) z^2 - (lambda zeta - conj(zeta)) z + lambda kappa - 1) = 0.
    std::vector<cplx> roots = poly_roots(
        {lambda - std::conj(kappa), -(lambda * zeta - std::conj(zeta)), lambda * kappa - 1.0, cplx(0.0, 0.0)});
    // Newton-polish on B itself.
    for (auto& z : roots) {
        for (int i = 0; i < 2; ++i) {
            cplx g = model.eval(z) - z;
            cplx dg = model.deriv(z) - 1.0;
            if (std::abs(dg) < 1e-14) break;
            z -= g / dg;
        }
    }
    std::vector<cplx> outside, inside;
    for (cplx z : roots) {
        if (std::abs(z) < 1e-9) continue;  // the fixed point at 0
        if (std::abs(z) > 1.0) outside.push_back(z);
        else inside.push_back(z);
    }
    if (outside.size() != 1 || inside.size() != 1)
        throw NumericError("fixed-point classification against the unit circle is ambiguous");
    BetaPoints bp;
    bp.beta = outside.front();
    bp.mirror = inside.front();
    bp.multiplier = model.deriv(bp.beta);
    if (std::abs(bp.multiplier) <= 1.0)
        throw NumericError("fixed point outside the circle is not repelling");

    // beta' solves B(z) = beta, z != beta, outside the closed unit disk.
    auto pre = poly_roots({model.preimage_cubic(bp.beta)[0], model.preimage_cubic(bp.beta)[1],
                           model.preimage_cubic(bp.beta)[2], model.preimage_cubic(bp.beta)[3]});
    std::vector<cplx> cand;
    for (auto& z : pre) {
        for (int i = 0; i < 2; ++i) {
            cplx g = model.eval(z) - bp.beta;
            cplx dg = model.deriv(z);
            if (std::abs(dg) < 1e-14) break;
            z -= g / dg;
        }
        if (std::abs(z - bp.beta) > 1e-6 && std::abs(z) > 1.0) cand.push_back(z);
    }
    if (cand.size() != 1)
        throw NumericError("expected exactly one preimage of beta outside the unit disk, found " +
                           std::to_string(cand.size()));
    bp.beta_prime = cand.front();
    return bp;
}

std::vector<cplx> finite_fixed_points(const QuadRational& F) {
    // z (p z + q) - z (r z + s) = z ((p - r) z + (q - s)) after clearing the denominator.
    cplx p = 1.0 - F.A, q = F.A * (1.0 - F.B), r = (1.0 - F.A) * F.B, s = 1.0 - F.B;
    std::vector<cplx> roots = poly_roots({p - r, q - s, cplx(0.0, 0.0)});
    return roots;
}

}  // namespace siegelmate
