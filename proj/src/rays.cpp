#include "siegelmate/rays.hpp"

#include <cmath>
#include <deque>
#include <numbers>

#include "siegelmate/errors.hpp"

namespace siegelmate {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

cplx boettcher_seed(const SiegelQuadratic& f, double potential, double angle_turns) {
    // phi(z) ~ z + c/(2z) for large z, so phi^{-1}(w) ~ w - c/(2w).
    cplx w = std::exp(potential) * cplx(std::cos(kTau * angle_turns), std::sin(kTau * angle_turns));
    return w - 0.5 * f.c / w;
}
}  // namespace

ExternalRay trace_ray(const SiegelQuadratic& f, const BigAngle& angle, const RayConfig& cfg) {
    if (cfg.escape_radius < 10.0) throw std::domain_error("escape radius must be at least 10");
    if (cfg.steps_per_halving < 2) throw std::domain_error("need at least 2 substeps per halving");

    ExternalRay ray;
    ray.angle = angle;
    const double h0 = std::log(cfg.escape_radius);
    const int S = cfg.steps_per_halving;

    // tower[k] lies on the ray of angle 2^k * t at potential 2^k * h_m.
    std::vector<cplx> tower;
    std::vector<BigAngle> doubled;  // doubled[k] = 2^k t mod 1
    doubled.push_back(angle);
    tower.push_back(boettcher_seed(f, h0, angle.to_double()));
    ray.polyline.push_back({h0, tower[0]});

    std::deque<cplx> tail{tower[0]};
    const int reliable_doublings = std::max(0, angle.reliable_bits() - 8);

    for (long m = 1; m <= cfg.max_steps; ++m) {
        double hm = h0 * std::exp2(-double(m) / S);
        int K = int((m + S - 1) / S);  // ceil(m/S): top level with 2^K hm >= h0

        if (int(tower.size()) <= K) {
            // New top level: seed explicitly while the doubled angle is still
            // reliable, otherwise continue from the forward image of the level
            // below (same ray, one substep earlier in potential).
            doubled.push_back(doubled.back().double_mod1());
            double pot = h0 * std::exp2(double(K) - double(m) / S);
            cplx seed = (K <= reliable_doublings || doubled.back().exact())
                            ? boettcher_seed(f, pot, doubled.back().to_double())
                            : f.eval(tower[std::size_t(K) - 1]);
            tower.push_back(seed);
        } else {
            int Ktop = int(tower.size()) - 1;
            double pot = h0 * std::exp2(double(Ktop) - double(m) / S);
            if (Ktop <= reliable_doublings || doubled[std::size_t(Ktop)].exact())
                tower[std::size_t(Ktop)] =
                    boettcher_seed(f, pot, doubled[std::size_t(Ktop)].to_double());
            else
                tower[std::size_t(Ktop)] = f.eval(tower[std::size_t(Ktop) - 1]);
        }

        // Pull the tower down: tower[k] = sqrt-branch(tower[k+1] - c) by continuity.
        for (int k = int(tower.size()) - 2; k >= 0; --k) {
            cplx s = std::sqrt(tower[std::size_t(k) + 1] - f.c);
            tower[std::size_t(k)] =
                (std::abs(s - tower[std::size_t(k)]) <= std::abs(-s - tower[std::size_t(k)])) ? s : -s;
        }

        ray.steps = m;
        ray.polyline.push_back({hm, tower[0]});
        tail.push_back(tower[0]);
        if (int(tail.size()) > cfg.stabilize_count) tail.pop_front();
        if (int(tail.size()) == cfg.stabilize_count) {
            double spread = 0.0;
            for (const cplx& p : tail) spread = std::max(spread, std::abs(p - tail.front()));
            if (spread <= cfg.eps_land) {
                cplx centroid{0.0, 0.0};
                for (const cplx& p : tail) centroid += p;
                centroid /= double(tail.size());
                ray.landed = true;
                ray.landing = centroid;
                ray.landing_radius = spread;
                return ray;
            }
        }
    }
    // Not landed within the step cap; report the deepest point reached.
    ray.landed = false;
    ray.landing = tower[0];
    ray.landing_radius = std::abs(tail.back() - tail.front());
    return ray;
}

std::pair<BigAngle, BigAngle> critical_angles(const ContinuedFraction& theta, int bits) {
    BigAngle w = omega_of_theta(theta, bits);
    return {w.div_pow2(1, 0), w.div_pow2(1, 1)};
}

std::vector<std::pair<BigAngle, BigAngle>> precritical_angle_pairs(const ContinuedFraction& theta,
                                                                   int k, int bits) {
    if (k < 0) throw std::domain_error("depth must be >= 0");
    auto [lo, hi] = critical_angles(theta, bits);
    auto lo_pre = dyadic_preimages(lo, k);
    auto hi_pre = dyadic_preimages(hi, k);
    std::vector<std::pair<BigAngle, BigAngle>> pairs;
    pairs.reserve(lo_pre.size());
    for (std::size_t j = 0; j < lo_pre.size(); ++j) pairs.push_back({lo_pre[j], hi_pre[j]});
    return pairs;
}

Itinerary itinerary_of_angle(const BigAngle& t, int n) {
    Itinerary it;
    it.digits = t.digits(n);
    return it;
}

std::vector<PinchPair> pinch_pairs(const ContinuedFraction& theta, const ContinuedFraction& nu,
                                   int depth, const RayConfig& cfg, int bits) {
    // theta = 1 - nu never mates; detect it exactly on the rational values.
    {
        Rational a = theta.value_rational(), b = nu.value_rational();
        BigInt lhs = a.num * b.den + b.num * a.den;
        BigInt rhs = a.den * b.den;
        double gap = std::abs(double(lhs - rhs) / double(rhs));
        if (gap < 1e-12)
            throw DegenerateModelError("theta + nu = 1: the pair has no mating");
    }
    SiegelQuadratic f = f_theta(theta.value());
    auto pairs = precritical_angle_pairs(nu, depth, bits);
    std::vector<PinchPair> out;
    out.reserve(pairs.size());
    for (const auto& [s, t] : pairs) {
        ExternalRay r1 = trace_ray(f, s.negate_mod1(), cfg);
        ExternalRay r2 = trace_ray(f, t.negate_mod1(), cfg);
        PinchPair pp;
        pp.s = s;
        pp.t = t;
        pp.z = r1.landing;
        pp.z_prime = r2.landing;
        pp.separation = std::abs(r1.landing - r2.landing);
        // Two landing points on this side are identified with the one
        // precritical point of the other factor.
        pp.ray_class_size = 3;
        pp.both_landed = r1.landed && r2.landed;
        out.push_back(pp);
    }
    return out;
}

}  // namespace siegelmate
