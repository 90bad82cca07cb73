#include "siegelmate/circle_map.hpp"

#include <cmath>
#include <numbers>

#include "siegelmate/errors.hpp"

namespace siegelmate {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

double phase_turns(cplx w) { return std::atan2(w.imag(), w.real()) / kTau; }
}  // namespace

double frac(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

double circ_dist(double a, double b) {
    double d = frac(a - b);
    return std::min(d, 1.0 - d);
}

CircleLift::CircleLift(std::function<cplx(cplx)> map, double anchor, int grid)
    : map_(std::move(map)), anchor_(anchor), grid_(grid) {
    delta_.resize(grid_ + 1);
    double prev_F = anchor_;
    delta_[0] = anchor_;
    for (int i = 1; i <= grid_; ++i) {
        double x = double(i) / grid_;
        cplx w = map_(cplx(std::cos(kTau * x), std::sin(kTau * x)));
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw NumericError("circle map produced a non-finite value");
        double ph = phase_turns(w);
        double step = ph - prev_F - std::floor(ph - prev_F);  // in [0,1)
        double F = prev_F + step;
        delta_[i] = F - x;
        prev_F = F;
    }
    // F(1) must equal F(0) + 1 for a degree-one lift.
    degree_residual_ = std::abs(delta_[grid_] - delta_[0]);
    if (degree_residual_ > 1e-6)
        throw NumericError("map is not a degree-one circle homeomorphism lift (closure residual " +
                           std::to_string(degree_residual_) + ")");
}

double CircleLift::displacement(double x) const {
    double xf = frac(x);
    double pos = xf * grid_;
    int i = std::min(int(pos), grid_ - 1);
    double t = pos - i;
    double guess = delta_[i] * (1.0 - t) + delta_[i + 1] * t;
    cplx w = map_(cplx(std::cos(kTau * xf), std::sin(kTau * xf)));
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw NumericError("circle map produced a non-finite value");
    double ph = phase_turns(w);
    // displacement = ph - xf + k with k the integer nearest to guess - (ph - xf)
    return ph - xf + std::round(guess - (ph - xf));
}

double CircleLift::operator()(double x) const { return x + displacement(x); }

RotationEstimate rotation_number(const CircleLift& lift, long iters, double x0) {
    if (iters < 1000) throw std::domain_error("rotation_number needs at least 1000 iterates");
    double x = frac(x0);
    double total = 0.0;
    for (long k = 0; k < iters; ++k) {
        double d = lift.displacement(x);
        total += d;
        x = frac(x + d);
    }
    double mean = total / double(iters);
    return {mean, frac(mean), 2.0 / double(iters), iters};
}

ClosestReturnTable closest_return_moments(const ContinuedFraction& cf, int M) {
    if (M < 0 || std::size_t(M) > cf.size()) throw std::out_of_range("M exceeds stored entries");
    ClosestReturnTable t;
    t.moments.reserve(M + 1);
    for (int n = 0; n <= M; ++n) {
        auto [p, q] = cf.convergent(std::size_t(n));
        (void)p;
        t.moments.push_back(static_cast<long>(q));
    }
    return t;
}

ClosestReturnTable empirical_closest_returns(const CircleLift& lift, long N, double x0, double tol) {
    ClosestReturnTable t;
    double x = frac(x0);
    double best = 2.0;
    for (long n = 1; n <= N; ++n) {
        x = frac(lift(x));
        double d = circ_dist(x, frac(x0));
        if (d < tol) {
            // Orbit point numerically indistinguishable from the base point.
            break;
        }
        if (d < best - tol) {
            best = d;
            t.moments.push_back(n);
            t.arcs.push_back(d);
        }
    }
    return t;
}

std::vector<double> commensurability_ratios(const CircleLift& lift, int levels, long N, double x0) {
    auto emp = empirical_closest_returns(lift, N, x0);
    std::vector<double> ratios;
    for (std::size_t n = 0; n + 1 < emp.arcs.size() && int(ratios.size()) <= levels; ++n) {
        if (emp.arcs[n] <= 0.0) throw PrecisionError("closest-return arc underflow");
        ratios.push_back(emp.arcs[n + 1] / emp.arcs[n]);
    }
    return ratios;
}

bool cf_prefix_agrees(double x, const ContinuedFraction& target, int depth) {
    if (depth < 1) return true;
    if (!(x > 0.0 && x < 1.0)) return false;
    auto got = cf_expand(x, std::size_t(depth));
    if (got.size() < std::size_t(depth)) return false;
    for (int i = 0; i < depth; ++i)
        if (got.entries()[i] != target.entries()[i]) return false;
    return true;
}

}  // namespace siegelmate
