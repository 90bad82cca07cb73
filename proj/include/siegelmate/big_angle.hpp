#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siegelmate/cf.hpp"

namespace siegelmate {

// Fixed-point binary fraction in [0,1) with a tracked absolute error bound.
// The bound is kept as log2(err) so it survives far below double underflow;
// err_log2 == -inf marks an exact value. Error propagation may overstate but
// never understates the bound.
class BigAngle {
  public:
    BigAngle() : mantissa_(0), bits_(64), err_log2_(exact_log2()) {}
    BigAngle(BigInt mantissa, int bits, double err_log2);

    static double exact_log2();

    static BigAngle exact_dyadic(BigInt mantissa, int bits);
    static BigAngle from_double(double x, int bits);
    // floor(num*2^bits/den) with the 2^-bits truncation folded into err.
    static BigAngle from_rational(const BigInt& num, const BigInt& den, int bits);

    const BigInt& mantissa() const { return mantissa_; }
    int bits() const { return bits_; }
    double err_log2() const { return err_log2_; }
    double err() const;
    bool exact() const;

    double to_double() const;
    std::string mantissa_hex() const;

    BigAngle add_mod1(const BigAngle& o) const;
    BigAngle sub_mod1(const BigAngle& o) const;
    BigAngle negate_mod1() const;
    // (value + j) / 2^k, j in [0, 2^k): the j-th preimage under k angle doublings.
    BigAngle div_pow2(int k, std::uint64_t j = 0) const;
    // 2^k * value mod 1.
    BigAngle mul_pow2_mod1(int k) const;
    BigAngle double_mod1() const { return mul_pow2_mod1(1); }

    // Distance from the represented value to the nearest integer (of the value
    // itself, i.e. min(v, 1-v)), ignoring err.
    double dist_to_integer() const;

    // Number of leading binary digits unaffected by the error bound.
    bool prefix_certified(int n) const;
    int reliable_bits() const;

    // First n binary digits; throws PrecisionError when not certified.
    std::vector<int> digits(int n) const;

    // Certified continued-fraction prefix of the value: entries common to the
    // expansions of value-err and value+err, with one guard entry dropped.
    std::vector<BigInt> cf_prefix(std::size_t max_entries) const;

  private:
    BigInt err_int_ceil() const;  // ceil(err * 2^bits), conservatively

    BigInt mantissa_;
    int bits_;
    double err_log2_;
};

// log2(2^a + 2^b), rounded up.
double log2_add(double a, double b);

}  // namespace siegelmate
