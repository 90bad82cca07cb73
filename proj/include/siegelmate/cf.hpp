#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace siegelmate {

using BigInt = boost::multiprecision::cpp_int;

struct Rational {
    BigInt num;
    BigInt den;  // > 0
};

enum class CfOrigin { ExactInput, TruncatedFromReal };

// Continued fraction [a1, a2, ..., aN] of a number in (0,1), all entries >= 1.
// Convergents p_n/q_n follow p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2}
// with p_0 = 0, q_0 = 1.
class ContinuedFraction {
  public:
    ContinuedFraction(std::vector<std::uint64_t> entries, CfOrigin origin);

    // Shorthand for [a, a, ..., a] (n copies).
    static ContinuedFraction repeated(std::uint64_t a, std::size_t n);

    const std::vector<std::uint64_t>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    CfOrigin origin() const { return origin_; }

    // n-th convergent, n = 0..size(). Reduced by construction.
    std::pair<BigInt, BigInt> convergent(std::size_t n) const;

    // Value of the deepest convergent, treated as the represented number.
    Rational value_rational() const;
    double value() const;

    // Upper bound on |true value - value_rational()| when the entries are a
    // truncation of an infinite expansion: 1 / (q_N (q_N + q_{N-1})).
    Rational uncertainty() const;

    // Continued fraction of 1 - value (exact, via the rational value).
    ContinuedFraction complement() const;

  private:
    std::vector<std::uint64_t> entries_;
    CfOrigin origin_;
};

// Full Euclidean expansion of num/den in (0,1), truncated to at most max_entries.
std::vector<std::uint64_t> cf_of_rational(BigInt num, BigInt den,
                                          std::size_t max_entries);

// Same, but with entries that may exceed 64 bits.
std::vector<BigInt> cf_of_rational_big(BigInt num, BigInt den,
                                       std::size_t max_entries);

// First n entries of the continued fraction of x in (0,1). x is converted to its
// exact dyadic rational, so a rational tail may end earlier than n entries.
ContinuedFraction cf_expand(double x, std::size_t n);

ContinuedFraction cf_expand_rational(const BigInt& num, const BigInt& den,
                                     std::size_t n, CfOrigin origin);

}  // namespace siegelmate
