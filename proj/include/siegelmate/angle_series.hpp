#pragma once

#include <cstdint>
#include <vector>

#include "siegelmate/big_angle.hpp"
#include "siegelmate/cf.hpp"

namespace siegelmate {

// Angle of the external ray landing at the critical value of the Siegel
// quadratic with rotation number theta:
//     omega(theta) = sum over fractions 0 < p/q < theta of 2^(-q)
//                  = sum over q >= 1 of floor(q*theta) * 2^(-q).
// The series is cut at Q = bits terms; the tail (Q+2)*2^(-Q) goes into err.
// Each floor(q*theta) is certified against the input's uncertainty; an
// unresolvable floor raises PrecisionError naming the offending q.
BigAngle omega_of_theta(const ContinuedFraction& theta, int bits);
BigAngle omega_of_theta(double theta, int bits);

// Sturmian point sum_{k>=1} b_k 2^(-k), b_k = floor(k theta + phi) - floor((k-1) theta + phi).
// For phi = 0 this equals omega(theta)/2; its orbit under angle doubling stays in
// the semicircle [omega/2, (omega+1)/2].
BigAngle sturmian_point(const ContinuedFraction& theta, const Rational& phi, int bits);
BigAngle sturmian_point(const ContinuedFraction& theta, double phi, int bits);

// Frequency of digit 1 among the first n binary digits. For omega(theta) this
// estimates theta with error O(1/n); on angles not of that form it is only a
// heuristic digit-frequency statistic.
double staircase_rho(const BigAngle& omega, int n);

struct RelationEntry {
    int n, m;
    double distance;
    double err_log2;
};

struct RelationReport {
    double min_distance = 0.0;
    int argmin_n = 0, argmin_m = 0;
    // True when every scanned distance exceeds its propagated error bound.
    bool certified_positive = false;
    // True when some distance is indistinguishable from 0 at working precision.
    bool solution_found = false;
    int bits = 0, N = 0;
    std::vector<RelationEntry> table;
};

// Scan dist(2^n omega(theta) + 2^m omega(nu), Z) over 0 <= n,m <= N.
RelationReport check_relation(const ContinuedFraction& theta, const ContinuedFraction& nu,
                              int N, int bits);

// All u with 2^k u = t (mod 1), sorted ascending.
std::vector<BigAngle> dyadic_preimages(const BigAngle& t, int k);

}  // namespace siegelmate
