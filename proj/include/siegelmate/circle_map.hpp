#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "siegelmate/cf.hpp"

namespace siegelmate {

using cplx = std::complex<double>;

// Lift of an orientation-preserving circle homeomorphism given by a map that
// preserves the unit circle. The displacement F(x) - x is pinned at x = 0 by
// `anchor` (the map families used here have an exactly known value there) and
// continued around the circle by phase unwrapping on a grid; pointwise
// evaluation then resolves the branch against the interpolated grid.
class CircleLift {
  public:
    CircleLift(std::function<cplx(cplx)> map, double anchor, int grid = 4096);

    double operator()(double x) const;
    double displacement(double x) const;
    double anchor() const { return anchor_; }

    // max |F(x+1) - F(x) - 1| observed while building the grid (degree check).
    double degree_residual() const { return degree_residual_; }

  private:
    std::function<cplx(cplx)> map_;
    double anchor_;
    int grid_;
    std::vector<double> delta_;  // displacement at i/grid, i = 0..grid
    double degree_residual_ = 0.0;
};

struct RotationEstimate {
    double unreduced;  // mean lift displacement (F^N(x0) - x0)/N
    double mod1;       // fractional part in [0,1)
    double error_bar;  // 2/N
    long iters;
};

// Birkhoff estimate of the rotation number; independent of x0 up to error_bar.
RotationEstimate rotation_number(const CircleLift& lift, long iters, double x0 = 0.0);

struct ClosestReturnTable {
    std::vector<long> moments;  // q_0, q_1, ..., q_M
    std::vector<double> arcs;   // |I_n| when measured empirically (may be empty)
};

// Convergent denominators q_n, n = 0..M (q_0 = 1).
ClosestReturnTable closest_return_moments(const ContinuedFraction& cf, int M);

// Moments n <= N at which the orbit of x0 returns closer to x0 than every
// earlier iterate (circular distance, ties to the earlier moment).
ClosestReturnTable empirical_closest_returns(const CircleLift& lift, long N, double x0 = 0.0,
                                             double tol = 1e-14);

// Consecutive closest-return arc-length ratios |I_{n+1}|/|I_n| for n <= levels.
std::vector<double> commensurability_ratios(const CircleLift& lift, int levels, long N = 200000,
                                            double x0 = 0.0);

// True when cf_expand(x, depth) reproduces the first `depth` entries of target.
bool cf_prefix_agrees(double x, const ContinuedFraction& target, int depth);

double frac(double x);             // x mod 1 in [0,1)
double circ_dist(double a, double b);  // distance on R/Z

}  // namespace siegelmate
