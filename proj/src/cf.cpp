#include "siegelmate/cf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "siegelmate/errors.hpp"

namespace siegelmate {

ContinuedFraction::ContinuedFraction(std::vector<std::uint64_t> entries, CfOrigin origin)
    : entries_(std::move(entries)), origin_(origin) {
    if (entries_.empty()) throw std::invalid_argument("continued fraction needs at least one entry");
    for (auto a : entries_)
        if (a < 1) throw std::invalid_argument("continued fraction entries must be >= 1");
    auto [p, q] = convergent(entries_.size());
    if (!(p > 0 && p < q)) throw std::invalid_argument("continued fraction value must lie in (0,1)");
}

ContinuedFraction ContinuedFraction::repeated(std::uint64_t a, std::size_t n) {
    return ContinuedFraction(std::vector<std::uint64_t>(n, a), CfOrigin::ExactInput);
}

std::pair<BigInt, BigInt> ContinuedFraction::convergent(std::size_t n) const {
    if (n > entries_.size()) throw std::out_of_range("convergent index exceeds stored entries");
    BigInt p_prev = 1, p = 0;  // p_{-1} = 1, p_0 = 0
    BigInt q_prev = 0, q = 1;  // q_{-1} = 0, q_0 = 1
    for (std::size_t i = 0; i < n; ++i) {
        BigInt a = entries_[i];
        BigInt pn = a * p + p_prev;
        BigInt qn = a * q + q_prev;
        p_prev = p; p = pn;
        q_prev = q; q = qn;
    }
    return {p, q};
}

Rational ContinuedFraction::value_rational() const {
    auto [p, q] = convergent(entries_.size());
    return {p, q};
}

double ContinuedFraction::value() const {
    auto [p, q] = convergent(entries_.size());
    return static_cast<double>(BigInt(p * BigInt(1) << 62) / q) * std::ldexp(1.0, -62);
}

Rational ContinuedFraction::uncertainty() const {
    if (origin_ == CfOrigin::TruncatedFromReal) {
        // The dyadic input was exact; the expansion is exact too.
        return {0, 1};
    }
    auto [pN, qN] = convergent(entries_.size());
    auto [pM, qM] = convergent(entries_.size() - 1);
    (void)pN; (void)pM;
    return {1, qN * (qN + qM)};
}

ContinuedFraction ContinuedFraction::complement() const {
    auto [p, q] = convergent(entries_.size());
    auto ents = cf_of_rational(q - p, q, entries_.size() + 2);
    return ContinuedFraction(std::move(ents), origin_);
}

std::vector<BigInt> cf_of_rational_big(BigInt num, BigInt den, std::size_t max_entries) {
    if (num <= 0 || num >= den) throw std::domain_error("cf_of_rational requires a value in (0,1)");
    std::vector<BigInt> out;
    // x = num/den; a_k = floor(1/x), then x <- 1/x - a_k.
    while (num != 0 && out.size() < max_entries) {
        BigInt a = den / num;
        BigInt r = den % num;
        out.push_back(a);
        den = num;
        num = r;
    }
    return out;
}

std::vector<std::uint64_t> cf_of_rational(BigInt num, BigInt den, std::size_t max_entries) {
    auto big = cf_of_rational_big(std::move(num), std::move(den), max_entries);
    std::vector<std::uint64_t> out;
    out.reserve(big.size());
    for (const auto& a : big) {
        if (a > BigInt(std::numeric_limits<std::uint64_t>::max()))
            throw NumericError("continued-fraction entry exceeds 64 bits");
        out.push_back(static_cast<std::uint64_t>(a));
    }
    return out;
}

ContinuedFraction cf_expand(double x, std::size_t n) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("cf_expand requires x in (0,1)");
    if (n < 1) throw std::domain_error("cf_expand requires n >= 1");
    int exp2 = 0;
    double m = std::frexp(x, &exp2);           // x = m * 2^exp2, m in [0.5, 1)
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    BigInt num = mant;
    BigInt den = BigInt(1) << (53 - exp2);
    return cf_expand_rational(num, den, n, CfOrigin::TruncatedFromReal);
}

ContinuedFraction cf_expand_rational(const BigInt& num, const BigInt& den, std::size_t n,
                                     CfOrigin origin) {
    auto ents = cf_of_rational(num, den, n);
    return ContinuedFraction(std::move(ents), origin);
}

}  // namespace siegelmate
