#include "siegelmate/blaschke.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <string>
#include <thread>

#include "siegelmate/errors.hpp"

namespace siegelmate {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

cplx unit(double turns) { return cplx(std::cos(kTau * turns), std::sin(kTau * turns)); }
}  // namespace

std::pair<cplx, cplx> solve_ab(double t) {
    cplx kappa = unit(t);
    cplx B = std::conj(kappa) - 3.0;
    cplx C = kappa;
    cplx disc = std::sqrt(B * B - 4.0 * C);
    // Stable form: pick the sign that avoids cancellation in -B -+ disc.
    cplx q = (std::real(std::conj(B) * disc) >= 0.0) ? -0.5 * (B + disc) : -0.5 * (B - disc);
    cplx r1, r2;
    if (q == cplx(0.0, 0.0)) {
        r1 = r2 = cplx(1.0, 0.0);  // t integer: double root at 1
    } else {
        r1 = q;
        r2 = C / q;
    }
    if (std::abs(r1) <= std::abs(r2)) return {r1, r2};
    return {r2, r1};
}

cplx PetersenModel::eval(cplx z) const {
    return unit(t) * z * z * (z - 3.0) / (1.0 - 3.0 * z);
}

cplx PetersenModel::deriv(cplx z) const {
    // Q'/Q = 2/z + 1/(z-3) + 3/(1-3z); handle z = 0 directly.
    if (z == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
    cplx L = 2.0 / z + 1.0 / (z - 3.0) + 3.0 / (1.0 - 3.0 * z);
    return eval(z) * L;
}

cplx PetersenModel::second_deriv(cplx z) const {
    if (z == cplx(0.0, 0.0)) return unit(t) * (-6.0);  // from the series expansion
    cplx L = 2.0 / z + 1.0 / (z - 3.0) + 3.0 / (1.0 - 3.0 * z);
    cplx Lp = -2.0 / (z * z) - 1.0 / ((z - 3.0) * (z - 3.0)) + 9.0 / ((1.0 - 3.0 * z) * (1.0 - 3.0 * z));
    return eval(z) * (L * L + Lp);
}

std::array<cplx, 4> PetersenModel::preimage_cubic(cplx w) const {
    cplx e = unit(t);
    // e z^2 (z-3) = w (1-3z)
    return {e, -3.0 * e, 3.0 * w, -w};
}

cplx BlaschkeCubic::eval(cplx z) const {
    return lambda * z * (z - a) / (1.0 - std::conj(a) * z) * (z - b) / (1.0 - std::conj(b) * z);
}

cplx BlaschkeCubic::deriv(cplx z) const {
    if (z == cplx(0.0, 0.0)) return multiplier_at_zero();
    cplx L = 1.0 / z + 1.0 / (z - a) + std::conj(a) / (1.0 - std::conj(a) * z) + 1.0 / (z - b) +
             std::conj(b) / (1.0 - std::conj(b) * z);
    return eval(z) * L;
}

cplx BlaschkeCubic::second_deriv(cplx z) const {
    cplx L = 1.0 / z + 1.0 / (z - a) + std::conj(a) / (1.0 - std::conj(a) * z) + 1.0 / (z - b) +
             std::conj(b) / (1.0 - std::conj(b) * z);
    cplx ca = std::conj(a), cb = std::conj(b);
    cplx Lp = -1.0 / (z * z) - 1.0 / ((z - a) * (z - a)) + ca * ca / ((1.0 - ca * z) * (1.0 - ca * z)) -
              1.0 / ((z - b) * (z - b)) + cb * cb / ((1.0 - cb * z) * (1.0 - cb * z));
    return eval(z) * (L * L + Lp);
}

std::array<cplx, 4> BlaschkeCubic::preimage_cubic(cplx w) const {
    // lambda z (z-a)(z-b) = w (1 - conj(a) z)(1 - conj(b) z)
    cplx ck = std::conj(kappa);   // conj(a) conj(b)
    cplx cz = std::conj(zeta());  // conj(a) + conj(b)
    return {lambda, -lambda * zeta() - w * ck, lambda * kappa + w * cz, -w};
}

cplx BlaschkeCubic::multiplier_at_zero() const { return lambda * kappa; }

cplx BlaschkeCubic::multiplier_at_infinity() const { return std::conj(kappa) / lambda; }

std::vector<cplx> BlaschkeCubic::critical_points() const {
    // B'(z) = 0 clears to conj(k) z^4 - 2 conj(zeta) z^3 + (2+|zeta|^2) z^2 - 2 zeta z + k = 0
    // with a known double root at z = 1; deflate it out and solve the quadratic.
    cplx A1 = std::conj(kappa);
    cplx A2 = -2.0 * std::conj(zeta());
    cplx A3 = 2.0 + std::norm(zeta());
    // Synthetic division by (z-1)^2: quotient c2 z^2 + c1 z + c0.
    cplx c2 = A1;
    cplx c1 = A2 + c2;
    cplx c0 = A3 + c1;
    cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    cplx q = (std::real(std::conj(c1) * disc) >= 0.0) ? -0.5 * (c1 + disc) : -0.5 * (c1 - disc);
    std::vector<cplx> pts{cplx(1.0, 0.0), cplx(1.0, 0.0)};
    if (q != cplx(0.0, 0.0)) {
        pts.push_back(q / c2);
        pts.push_back(c0 / q);
    }
    return pts;
}

BlaschkeCubic build_B(double t, double nu) {
    double tf = t - std::floor(t);
    if (std::min(tf, 1.0 - tf) < 1e-12)
        throw DegenerateModelError("t is an integer: the product degenerates to a rotation");
    auto [a, b] = solve_ab(t);
    cplx kappa = unit(t);
    cplx lambda = unit(-nu) / (a * b);
    return BlaschkeCubic{t, nu, kappa, a, b, lambda};
}

CriticalResiduals critical_structure_check(const BlaschkeCubic& model) {
    return {std::abs(model.deriv(cplx(1.0, 0.0))), std::abs(model.second_deriv(cplx(1.0, 0.0)))};
}

CriticalResiduals critical_structure_check(const PetersenModel& model) {
    return {std::abs(model.deriv(cplx(1.0, 0.0))), std::abs(model.second_deriv(cplx(1.0, 0.0)))};
}

CircleLift make_lift(const PetersenModel& model, int grid) {
    PetersenModel m = model;
    return CircleLift([m](cplx z) { return m.eval(z); }, m.lift_anchor(), grid);
}

CircleLift make_lift(const BlaschkeCubic& model, int grid) {
    BlaschkeCubic m = model;
    return CircleLift([m](cplx z) { return m.eval(z); }, m.lift_anchor(), grid);
}

namespace {

struct Family {
    // Unreduced rotation number of the lift at parameter t.
    std::function<double(double, long)> rho;
    double target;
};

double probe(const Family& fam, double t, long iters) { return fam.rho(t, iters); }

SolveResult solve_family(const Family& fam, const SolveOptions& opts) {
    SolveResult res;
    res.target_unreduced = fam.target;

    const int S = opts.scan_samples;
    res.scan.resize(S);
    // Probes are independent; run them in a few worker chunks.
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> jobs;
    std::atomic<int> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&] {
            for (int i = next.fetch_add(1); i < S; i = next.fetch_add(1)) {
                double t = opts.t_lo + (opts.t_hi - opts.t_lo) * (i + 0.5) / S;
                res.scan[i] = {t, probe(fam, t, opts.probe_iters)};
            }
        }));
    }
    for (auto& j : jobs) j.get();

    for (int i = 0; i + 1 < S; ++i) {
        double g0 = res.scan[i].second - fam.target;
        double g1 = res.scan[i + 1].second - fam.target;
        if (g0 == 0.0 || (g0 < 0.0) != (g1 < 0.0))
            res.brackets.push_back({res.scan[i].first, res.scan[i + 1].first, g0, g1});
    }
    if (res.brackets.empty())
        throw SolverError("no bracket for the target rotation number on the scan grid (" +
                          std::to_string(S) + " samples)");

    Bracket br = res.brackets.front();
    double lo = br.t_lo, hi = br.t_hi, glo = br.g_lo;
    double noise = 2.0 / double(opts.probe_iters);
    while (hi - lo > opts.t_tol) {
        double mid = 0.5 * (lo + hi);
        double gm = probe(fam, mid, opts.probe_iters) - fam.target;
        if (std::abs(gm) < 0.25 * noise) {
            // Inside the estimator noise floor; tighten symmetrically and stop.
            double w = 0.25 * (hi - lo);
            lo = mid - w;
            hi = mid + w;
            if (hi - lo <= 8.0 * opts.t_tol) break;
            glo = probe(fam, lo, opts.probe_iters) - fam.target;
            continue;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    res.t = 0.5 * (lo + hi);
    return res;
}

}  // namespace

SolveResult solve_t_petersen(const ContinuedFraction& theta, const SolveOptions& opts) {
    double th = theta.value();
    Family fam;
    fam.target = th;  // lift displacement runs from 0 at t=0 to 1 at t=1
    fam.rho = [&opts](double t, long iters) {
        PetersenModel m{t};
        CircleLift lift = make_lift(m, opts.lift_grid);
        return rotation_number(lift, iters).unreduced;
    };
    SolveResult res = solve_family(fam, opts);
    PetersenModel m{res.t};
    res.rotation = rotation_number(make_lift(m, opts.lift_grid), opts.confirm_iters);
    if (!cf_prefix_agrees(res.rotation.mod1, theta,
                          std::min<int>(opts.cf_agreement_depth, int(theta.size()))))
        throw SolverError("solved rotation number fails continued-fraction prefix agreement at t=" +
                          std::to_string(res.t));
    return res;
}

SolveResult solve_t_mating(const ContinuedFraction& theta, const ContinuedFraction& nu,
                           const SolveOptions& opts) {
    double th = theta.value();
    double nv = nu.value();
    double s = th + nv;
    if (std::min(frac(s), 1.0 - frac(s)) < 1e-9)
        throw DegenerateModelError("theta + nu is an integer: no interior rotation-number bracket");
    Family fam;
    // Lift displacement decreases from -nu at t=0 to -nu-1 at t=1; the unique
    // representative of theta (mod 1) in that interval is theta - floor(theta+nu) - 1.
    fam.target = th - std::floor(s) - 1.0;
    fam.rho = [nv, &opts](double t, long iters) {
        BlaschkeCubic m = build_B(t, nv);
        CircleLift lift = make_lift(m, opts.lift_grid);
        return rotation_number(lift, iters).unreduced;
    };
    SolveResult res = solve_family(fam, opts);
    BlaschkeCubic m = build_B(res.t, nv);
    res.rotation = rotation_number(make_lift(m, opts.lift_grid), opts.confirm_iters);
    if (!cf_prefix_agrees(res.rotation.mod1, theta,
                          std::min<int>(opts.cf_agreement_depth, int(theta.size()))))
        throw SolverError("solved rotation number fails continued-fraction prefix agreement at t=" +
                          std::to_string(res.t));
    return res;
}

}  // namespace siegelmate
