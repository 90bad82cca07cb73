#include "siegelmate/angle_series.hpp"

#include <cmath>
#include <string>

#include "siegelmate/errors.hpp"

namespace siegelmate {

namespace {

struct ExactAngleInput {
    Rational value;        // proxy rational for the (irrational) input
    Rational uncertainty;  // |true - proxy| <= uncertainty
};

ExactAngleInput input_of(const ContinuedFraction& theta) {
    return {theta.value_rational(), theta.uncertainty()};
}

ExactAngleInput input_of(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("theta must lie in (0,1)");
    int e = 0;
    double m = std::frexp(theta, &e);
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    return {{BigInt(mant), BigInt(1) << (53 - e)}, {0, 1}};
}

// floor(mult * value + offset) with certification: the floor must be stable
// under perturbing the value by +-(mult * uncertainty).
BigInt certified_floor(const ExactAngleInput& in, std::int64_t mult, const Rational& offset) {
    // q = floor((mult*num*oden + onum*den) / (den*oden))
    BigInt num = BigInt(mult) * in.value.num * offset.den + offset.num * in.value.den;
    BigInt den = in.value.den * offset.den;
    BigInt fl = num / den;  // num >= 0, den > 0
    BigInt rem = num % den;
    if (in.uncertainty.num != 0 && mult != 0) {
        // need rem/den > mult*unc and (den-rem)/den > mult*unc
        BigInt lhs_lo = rem * in.uncertainty.den;
        BigInt lhs_hi = (den - rem) * in.uncertainty.den;
        BigInt rhs = BigInt(mult) * in.uncertainty.num * den;
        if (lhs_lo <= rhs || lhs_hi <= rhs)
            throw PrecisionError("floor(q*theta) unresolved at q=" + std::to_string(mult) +
                                 "; supply theta to greater depth");
    }
    return fl;
}

BigAngle omega_impl(const ExactAngleInput& in, int bits) {
    if (bits < 8) throw std::domain_error("omega needs at least 8 bits");
    const int Q = bits;
    BigInt acc = 0;
    const Rational zero{0, 1};
    for (int q = 1; q <= Q; ++q) {
        BigInt count = certified_floor(in, q, zero);  // #{p : 0 < p/q < theta}
        acc += count << (bits - q);
    }
    acc &= (BigInt(1) << bits) - 1;  // value < 1, mask is a no-op for sane input
    // Tail bound: sum_{q>Q} q 2^-q = (Q+2) 2^-Q.
    double tail_log2 = std::log2(double(Q) + 2.0) - Q;
    return BigAngle(std::move(acc), bits, tail_log2);
}

}  // namespace

BigAngle omega_of_theta(const ContinuedFraction& theta, int bits) {
    return omega_impl(input_of(theta), bits);
}

BigAngle omega_of_theta(double theta, int bits) { return omega_impl(input_of(theta), bits); }

BigAngle sturmian_point(const ContinuedFraction& theta, const Rational& phi, int bits) {
    if (phi.num < 0 || phi.num >= phi.den) throw std::domain_error("phi must lie in [0,1)");
    auto in = input_of(theta);
    BigInt acc = 0;
    BigInt prev = certified_floor(in, 0, phi);
    for (int k = 1; k <= bits; ++k) {
        BigInt cur = certified_floor(in, k, phi);
        BigInt b = cur - prev;
        if (b < 0 || b > 1) throw NumericError("sturmian digit outside {0,1}");
        if (b == 1) acc += BigInt(1) << (bits - k);
        prev = cur;
    }
    return BigAngle(std::move(acc), bits, -double(bits));  // tail of digits beyond bits
}

BigAngle sturmian_point(const ContinuedFraction& theta, double phi, int bits) {
    if (!(phi >= 0.0 && phi < 1.0)) throw std::domain_error("phi must lie in [0,1)");
    if (phi == 0.0) return sturmian_point(theta, Rational{0, 1}, bits);
    int e = 0;
    double m = std::frexp(phi, &e);
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    return sturmian_point(theta, Rational{BigInt(mant), BigInt(1) << (53 - e)}, bits);
}

double staircase_rho(const BigAngle& omega, int n) {
    if (n < 1) throw std::domain_error("staircase_rho needs n >= 1");
    auto ds = omega.digits(n);  // raises PrecisionError if uncertified
    long ones = 0;
    for (int d : ds) ones += d;
    return double(ones) / double(n);
}

RelationReport check_relation(const ContinuedFraction& theta, const ContinuedFraction& nu,
                              int N, int bits) {
    if (N < 0) throw std::domain_error("check_relation needs N >= 0");
    BigAngle w1 = omega_of_theta(theta, bits);
    BigAngle w2 = omega_of_theta(nu, bits);
    BigInt modulus = BigInt(1) << bits;

    RelationReport rep;
    rep.bits = bits;
    rep.N = N;
    rep.table.reserve(std::size_t(N + 1) * std::size_t(N + 1));
    bool first = true;
    bool all_positive = true;
    for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= N; ++m) {
            BigInt x = ((w1.mantissa() << n) + (w2.mantissa() << m)) % modulus;
            BigInt y = modulus - x;
            BigInt d = std::min(x, y);
            int shift = std::max(0, bits - 64);
            double dist = static_cast<double>(d >> shift) * std::exp2(shift - bits);
            double err2 = log2_add(w1.err_log2() + n, w2.err_log2() + m);
            rep.table.push_back({n, m, dist, err2});
            if (first || dist < rep.min_distance) {
                rep.min_distance = dist;
                rep.argmin_n = n;
                rep.argmin_m = m;
                first = false;
            }
            bool positive = dist > 0.0 && std::log2(dist) > err2;
            if (!positive) {
                all_positive = false;
                if (dist <= std::exp2(err2) * 2.0) rep.solution_found = true;
            }
        }
    }
    rep.certified_positive = all_positive;
    return rep;
}

std::vector<BigAngle> dyadic_preimages(const BigAngle& t, int k) {
    if (k < 0) throw std::domain_error("dyadic_preimages needs k >= 0");
    if (k > 40) throw std::domain_error("preimage depth too large");
    std::vector<BigAngle> out;
    out.reserve(std::size_t(1) << k);
    for (std::uint64_t j = 0; j < (std::uint64_t(1) << k); ++j) out.push_back(t.div_pow2(k, j));
    return out;
}

}  // namespace siegelmate
