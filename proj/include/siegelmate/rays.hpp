#pragma once

#include <utility>
#include <vector>

#include "siegelmate/angle_series.hpp"
#include "siegelmate/big_angle.hpp"
#include "siegelmate/rational_maps.hpp"

namespace siegelmate {

struct RayConfig {
    double escape_radius = 100.0;  // Boettcher seeds are placed at |w| >= this
    int steps_per_halving = 4;     // potential substeps per halving
    double eps_land = 1e-4;
    int stabilize_count = 8;  // consecutive points within eps_land to declare landing
    long max_steps = 100000;
};

struct ExternalRay {
    BigAngle angle;
    std::vector<std::pair<double, cplx>> polyline;  // (potential, point), outward to inward
    bool landed = false;
    cplx landing{0.0, 0.0};
    double landing_radius = 0.0;  // spread of the stabilized tail
    long steps = 0;
};

// Trace the external ray of the given angle by backward iteration: a tower of
// points on the doubled-angle rays is kept consistent across potentials, each
// pulled back by the square-root branch chosen by continuity. The angle should
// carry enough bits for max_steps/steps_per_halving doublings; beyond its
// reliable depth the tower seeds fall back to forward images.
ExternalRay trace_ray(const SiegelQuadratic& f, const BigAngle& angle, const RayConfig& cfg = {});

// Angles of the two rays landing at the critical point: omega/2 and (omega+1)/2.
std::pair<BigAngle, BigAngle> critical_angles(const ContinuedFraction& theta, int bits);

// Depth-k precritical angle pairs: ((j + omega/2)/2^k, (j + (omega+1)/2)/2^k),
// j = 0..2^k-1. Each pair doubles componentwise into the depth-0 pair after k
// steps and lands at a single precritical point.
std::vector<std::pair<BigAngle, BigAngle>> precritical_angle_pairs(const ContinuedFraction& theta,
                                                                   int k, int bits);

struct Itinerary {
    std::vector<int> digits;
    std::vector<int> ambiguous_positions;
};

// Itinerary digits of an angle are its binary digits; shifting the angle by
// doubling shifts the itinerary.
Itinerary itinerary_of_angle(const BigAngle& t, int n);

struct PinchPair {
    BigAngle s, t;        // the pair of angles on the other factor's side
    cplx z, z_prime;      // landings of the rays at -s and -t
    double separation;    // |z - z_prime|
    int ray_class_size;   // points of the ray class across both sides
    bool both_landed;
};

// Pinch correspondence: for each depth-k precritical pair (s,t) of the nu
// side, trace this side's rays at angles -s and -t; the mating identifies the
// two landing points. Rejects theta = 1 - nu.
std::vector<PinchPair> pinch_pairs(const ContinuedFraction& theta, const ContinuedFraction& nu,
                                   int depth, const RayConfig& cfg, int bits);

}  // namespace siegelmate
