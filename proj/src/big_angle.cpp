#include "siegelmate/big_angle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "siegelmate/errors.hpp"

namespace siegelmate {

namespace {
BigInt pow2(int k) { return BigInt(1) << k; }
}  // namespace

double BigAngle::exact_log2() { return -std::numeric_limits<double>::infinity(); }

double log2_add(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi)) + 1e-9;
}

BigAngle::BigAngle(BigInt mantissa, int bits, double err_log2)
    : mantissa_(std::move(mantissa)), bits_(bits), err_log2_(err_log2) {
    if (bits_ < 1) throw std::invalid_argument("BigAngle needs at least 1 bit");
    if (mantissa_ < 0 || mantissa_ >= pow2(bits_))
        throw std::invalid_argument("BigAngle mantissa out of [0, 2^bits)");
}

BigAngle BigAngle::exact_dyadic(BigInt mantissa, int bits) {
    return BigAngle(std::move(mantissa), bits, exact_log2());
}

BigAngle BigAngle::from_double(double x, int bits) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("angle must lie in [0,1)");
    int e = 0;
    double m = std::frexp(x, &e);  // x = m 2^e, e <= 0
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    // x = mant * 2^(e-53) exactly.
    int shift = bits + e - 53;
    BigInt v = mant;
    double err = exact_log2();
    if (shift >= 0) {
        v <<= shift;
    } else {
        v >>= -shift;
        if (x != 0.0) err = -bits;  // truncated low bits
    }
    return BigAngle(std::move(v), bits, err);
}

BigAngle BigAngle::from_rational(const BigInt& num, const BigInt& den, int bits) {
    if (den <= 0 || num < 0 || num >= den) throw std::domain_error("angle rational must lie in [0,1)");
    BigInt v = (num << bits) / den;
    bool ex = ((num << bits) % den) == 0;
    return BigAngle(std::move(v), bits, ex ? exact_log2() : -double(bits));
}

double BigAngle::err() const { return std::exp2(err_log2_); }
bool BigAngle::exact() const { return std::isinf(err_log2_) && err_log2_ < 0; }

double BigAngle::to_double() const {
    int keep = std::min(bits_, 64);
    BigInt top = mantissa_ >> (bits_ - keep);
    return static_cast<double>(top) * std::ldexp(1.0, -keep);
}

std::string BigAngle::mantissa_hex() const {
    std::ostringstream os;
    os << std::hex << mantissa_;
    return os.str();
}

BigAngle BigAngle::add_mod1(const BigAngle& o) const {
    if (o.bits_ != bits_) {
        // Align to the finer grid.
        if (o.bits_ > bits_) {
            BigAngle self(mantissa_ << (o.bits_ - bits_), o.bits_, err_log2_);
            return self.add_mod1(o);
        }
        BigAngle other(o.mantissa_ << (bits_ - o.bits_), bits_, o.err_log2_);
        return add_mod1(other);
    }
    BigInt v = mantissa_ + o.mantissa_;
    if (v >= pow2(bits_)) v -= pow2(bits_);
    return BigAngle(std::move(v), bits_, log2_add(err_log2_, o.err_log2_));
}

BigAngle BigAngle::sub_mod1(const BigAngle& o) const { return add_mod1(o.negate_mod1()); }

BigAngle BigAngle::negate_mod1() const {
    if (mantissa_ == 0) return *this;
    return BigAngle(pow2(bits_) - mantissa_, bits_, err_log2_);
}

BigAngle BigAngle::div_pow2(int k, std::uint64_t j) const {
    if (k < 0) throw std::domain_error("div_pow2 needs k >= 0");
    if (k == 0) return *this;
    if (j >= (std::uint64_t(1) << std::min(k, 63))) throw std::domain_error("preimage index out of range");
    BigInt v = mantissa_ + (BigInt(j) << bits_);
    return BigAngle(std::move(v), bits_ + k, err_log2_ - k);
}

BigAngle BigAngle::mul_pow2_mod1(int k) const {
    if (k < 0) throw std::domain_error("mul_pow2_mod1 needs k >= 0");
    BigInt v = (mantissa_ << k) & (pow2(bits_) - 1);
    return BigAngle(std::move(v), bits_, err_log2_ + k);
}

double BigAngle::dist_to_integer() const {
    BigInt lower = mantissa_;
    BigInt upper = pow2(bits_) - mantissa_;
    const BigInt& d = std::min(lower, upper);
    // The top 53 bits are enough for a faithful double.
    if (bits_ <= 800) return static_cast<double>(d) * std::exp2(-bits_);
    int shift = std::max(0, bits_ - 64);
    return static_cast<double>(d >> shift) * std::exp2(shift - bits_);
}

BigInt BigAngle::err_int_ceil() const {
    if (exact()) return 0;
    double scaled = err_log2_ + bits_;
    if (scaled < 0) return 1;
    if (scaled > bits_ + 62) return pow2(bits_);  // error swamps everything
    return pow2(static_cast<int>(std::ceil(scaled)) + 1);
}

bool BigAngle::prefix_certified(int n) const {
    if (n > bits_) return false;
    if (exact()) return true;
    BigInt e = err_int_ceil();
    BigInt lo = mantissa_ - e;
    BigInt hi = mantissa_ + e;
    if (lo < 0 || hi >= pow2(bits_)) return false;  // digits may wrap
    return (lo >> (bits_ - n)) == (hi >> (bits_ - n));
}

int BigAngle::reliable_bits() const {
    if (exact()) return bits_;
    int lo = 0, hi = bits_;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (prefix_certified(mid)) lo = mid; else hi = mid - 1;
    }
    return lo;
}

std::vector<int> BigAngle::digits(int n) const {
    if (n < 0 || n > bits_) throw std::domain_error("digit count out of range");
    if (!prefix_certified(n))
        throw PrecisionError("requested " + std::to_string(n) +
                             " digits but only " + std::to_string(reliable_bits()) +
                             " are certified");
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = static_cast<int>((mantissa_ >> (bits_ - 1 - i)) & 1);
    return out;
}

std::vector<BigInt> BigAngle::cf_prefix(std::size_t max_entries) const {
    BigInt e = err_int_ceil();
    BigInt lo_num = mantissa_ - e, hi_num = mantissa_ + e;
    BigInt den = pow2(bits_);
    if (lo_num <= 0 || hi_num >= den) return {};
    // Expand both interval endpoints; keep the agreeing prefix minus one guard entry.
    auto lo_cf = cf_of_rational_big(lo_num, den, max_entries + 1);
    auto hi_cf = cf_of_rational_big(hi_num, den, max_entries + 1);
    std::vector<BigInt> out;
    std::size_t n = std::min(lo_cf.size(), hi_cf.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (lo_cf[i] != hi_cf[i]) break;
        out.emplace_back(lo_cf[i]);
    }
    if (!exact() && !out.empty()) out.pop_back();
    if (out.size() > max_entries) out.resize(max_entries);
    return out;
}

}  // namespace siegelmate
