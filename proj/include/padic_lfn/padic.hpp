#pragma once

#include "padic_lfn/arith.hpp"
#include "padic_lfn/errors.hpp"
#include "padic_lfn/scalar.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace padic_lfn {

inline constexpr std::size_t default_coset_cap = 1'000'000;

/// Finite-precision element of Q_p stored as p^valuation * (d0 + d1 p + ...),
/// d0 != 0. Zero is a separate exact value. Immutable.
class padic_number {
public:
    static constexpr int default_precision = 32;

    static padic_number make(int p, int valuation, std::vector<int> digits) {
        check_prime(p);
        if (digits.empty()) throw math_error(error_kind::invalid_argument, "digits", "digit list is empty");
        for (int d : digits) {
            if (d < 0 || d >= p)
                throw math_error(error_kind::invalid_argument, "digits",
                                 "digit " + std::to_string(d) + " outside [0, " + std::to_string(p - 1) + "]");
        }
        if (digits.front() == 0)
            throw math_error(error_kind::invalid_argument, "digits", "leading digit of a nonzero number must be nonzero");
        return padic_number(p, valuation, std::move(digits));
    }

    static padic_number zero(int p) {
        check_prime(p);
        padic_number z(p, 0, std::vector<int>(default_precision, 0));
        z.zero_ = true;
        return z;
    }

    static padic_number from_integer(int p, std::int64_t value, int precision = default_precision) {
        check_prime(p);
        if (value == 0) return zero(p);
        if (value < 0) return -from_integer(p, -value, precision);
        int v = 0;
        while (value % p == 0) {
            value /= p;
            ++v;
        }
        std::vector<int> digits;
        digits.reserve(precision);
        for (int i = 0; i < precision; ++i) {
            digits.push_back(static_cast<int>(value % p));
            value /= p;
        }
        return padic_number(p, v, std::move(digits));
    }

    /// num/den with the unit part inverted modulo p^precision.
    static padic_number from_rational(int p, big_int num, big_int den, int precision = default_precision) {
        check_prime(p);
        if (den == 0) throw math_error(error_kind::invalid_argument, "den", "zero denominator");
        if (num == 0) return zero(p);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int v = 0;
        while (num % p == 0) {
            num /= p;
            ++v;
        }
        while (den % p == 0) {
            den /= p;
            --v;
        }
        big_int modulus = boost::multiprecision::pow(big_int(p), precision);
        big_int value = (num % modulus) * inverse_mod(den % modulus, modulus) % modulus;
        if (value < 0) value += modulus;
        std::vector<int> digits;
        digits.reserve(precision);
        for (int i = 0; i < precision; ++i) {
            digits.push_back(static_cast<int>(value % p));
            value /= p;
        }
        return padic_number(p, v, std::move(digits));
    }

    int prime() const noexcept { return prime_; }
    bool is_zero() const noexcept { return zero_; }
    int valuation() const noexcept { return valuation_; }
    int precision() const noexcept { return static_cast<int>(digits_.size()); }
    const std::vector<int>& digits() const noexcept { return digits_; }

    /// Exponent below which digits are known; exact zero is known everywhere.
    int absolute_precision() const noexcept {
        return zero_ ? INT_MAX : valuation_ + precision();
    }

    /// Digit multiplying p^exponent (0 below the valuation or past the stored digits).
    int digit_at(int exponent) const noexcept {
        if (zero_ || exponent < valuation_) return 0;
        const auto idx = static_cast<std::size_t>(exponent - valuation_);
        return idx < digits_.size() ? digits_[idx] : 0;
    }

    /// |x|_p = p^(-valuation); 0 for zero.
    rational norm() const {
        if (zero_) return rational(0);
        if (valuation_ >= 0) return rational(big_int(1), boost::multiprecision::pow(big_int(prime_), valuation_));
        return rational(boost::multiprecision::pow(big_int(prime_), -valuation_));
    }

    /// Multiplication by p^k.
    padic_number shifted(int k) const {
        padic_number r = *this;
        if (!zero_) r.valuation_ += k;
        return r;
    }

    padic_number operator-() const {
        if (zero_) return *this;
        padic_number r = *this;
        r.digits_[0] = prime_ - digits_[0];
        for (std::size_t i = 1; i < digits_.size(); ++i) r.digits_[i] = prime_ - 1 - digits_[i];
        return r;
    }

    friend padic_number operator+(const padic_number& x, const padic_number& y) {
        check_same_prime(x, y);
        if (x.zero_) return y;
        if (y.zero_) return x;
        const int p = x.prime_;
        const int lo = std::min(x.valuation_, y.valuation_);
        const int hi = std::min(x.absolute_precision(), y.absolute_precision());
        std::vector<int> out(static_cast<std::size_t>(hi - lo));
        int carry = 0;
        for (int e = lo; e < hi; ++e) {
            int s = x.digit_at(e) + y.digit_at(e) + carry;
            out[static_cast<std::size_t>(e - lo)] = s % p;
            carry = s / p;
        }
        return normalized(p, lo, std::move(out));
    }

    friend padic_number operator-(const padic_number& x, const padic_number& y) { return x + (-y); }

    friend padic_number operator*(const padic_number& x, const padic_number& y) {
        check_same_prime(x, y);
        if (x.zero_) return x;
        if (y.zero_) return y;
        const int p = x.prime_;
        const std::size_t n = std::min(x.digits_.size(), y.digits_.size());
        std::vector<std::int64_t> acc(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x.digits_[i] == 0) continue;
            for (std::size_t j = 0; i + j < n; ++j) acc[i + j] += std::int64_t{x.digits_[i]} * y.digits_[j];
        }
        std::vector<int> out(n);
        std::int64_t carry = 0;
        for (std::size_t k = 0; k < n; ++k) {
            std::int64_t s = acc[k] + carry;
            out[k] = static_cast<int>(s % p);
            carry = s / p;
        }
        return normalized(p, x.valuation_ + y.valuation_, std::move(out));
    }

    /// Digit strings of different lengths compare as if padded with zeros.
    friend bool operator==(const padic_number& x, const padic_number& y) {
        if (x.prime_ != y.prime_ || x.zero_ != y.zero_) return false;
        if (x.zero_) return true;
        if (x.valuation_ != y.valuation_) return false;
        const std::size_t n = std::max(x.digits_.size(), y.digits_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const int a = i < x.digits_.size() ? x.digits_[i] : 0;
            const int b = i < y.digits_.size() ? y.digits_[i] : 0;
            if (a != b) return false;
        }
        return true;
    }

    std::string to_string() const {
        if (zero_) return "0";
        std::string s = std::to_string(prime_) + "^" + std::to_string(valuation_) + "*(";
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(digits_[i]);
        }
        return s + ")";
    }

private:
    padic_number(int p, int v, std::vector<int> digits) : prime_(p), valuation_(v), digits_(std::move(digits)) {}

    static void check_prime(int p) {
        if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
    }

    static void check_same_prime(const padic_number& x, const padic_number& y) {
        if (x.prime_ != y.prime_)
            throw math_error(error_kind::invalid_argument, "p",
                             "mismatched primes " + std::to_string(x.prime_) + " and " + std::to_string(y.prime_));
    }

    static padic_number normalized(int p, int lo, std::vector<int> digits) {
        auto first = std::find_if(digits.begin(), digits.end(), [](int d) { return d != 0; });
        if (first == digits.end()) return zero(p);
        const int skip = static_cast<int>(first - digits.begin());
        digits.erase(digits.begin(), first);
        return padic_number(p, lo + skip, std::move(digits));
    }

    static big_int inverse_mod(big_int a, const big_int& m) {
        big_int old_r = a < 0 ? a + m : a, r = m, old_s = 1, s = 0;
        while (r != 0) {
            big_int q = old_r / r;
            big_int t = old_r - q * r;
            old_r = r;
            r = t;
            t = old_s - q * s;
            old_s = s;
            s = t;
        }
        if (old_r != 1) throw math_error(error_kind::invalid_argument, "den", "denominator unit not invertible");
        big_int inv = old_s % m;
        return inv < 0 ? inv + m : inv;
    }

    int prime_ = 2;
    int valuation_ = 0;
    std::vector<int> digits_;
    bool zero_ = false;
};

/// Sum of the digits at negative exponents, as an exact rational in [0, 1).
inline rational fractional_part(const padic_number& x) {
    if (x.is_zero() || x.valuation() >= 0) return rational(0);
    const int p = x.prime();
    const int count = std::min(-x.valuation(), x.precision());
    big_int num = 0;
    big_int scale = 1;
    for (int i = 0; i < count; ++i) {
        num += scale * x.digits()[static_cast<std::size_t>(i)];
        scale *= p;
    }
    return rational(num, boost::multiprecision::pow(big_int(p), -x.valuation()));
}

/// exp(2 pi i {x}_p). Depends only on the digits at negative exponents.
template <class Real = double>
complex_of<Real> additive_character(const padic_number& x) {
    using C = complex_of<Real>;
    if (x.is_zero() || x.valuation() >= 0) return C(Real(1), Real(0));
    const int p = x.prime();
    const int depth = -x.valuation();
    const int count = std::min(depth, x.precision());
    // Exact residue when p^depth fits comfortably in 62 bits.
    if (depth * std::log2(static_cast<double>(p)) < 61.0) {
        std::int64_t num = 0, scale = 1;
        for (int i = 0; i < count; ++i) {
            num += scale * x.digits()[static_cast<std::size_t>(i)];
            scale *= p;
        }
        return root_of_unity<Real>(num, ipow_int(p, depth));
    }
    Real acc(0);
    for (int e = x.valuation(); e < 0; ++e) acc = (acc + Real(x.digit_at(e))) / Real(p);
    return unit_phase<Real>(acc);
}

/// Closed ball {xi : |xi - center|_p <= p^radius_exponent}.
struct padic_ball {
    padic_number center;
    int radius_exponent = 0;

    int prime() const noexcept { return center.prime(); }

    rational measure() const {
        const big_int p(prime());
        if (radius_exponent >= 0) return rational(boost::multiprecision::pow(p, radius_exponent));
        return rational(big_int(1), boost::multiprecision::pow(p, -radius_exponent));
    }

    bool contains(const padic_number& x) const {
        const padic_number d = x - center;
        return d.is_zero() || d.valuation() >= -radius_exponent;
    }

    bool contains(const padic_ball& other) const {
        return other.radius_exponent <= radius_exponent && contains(other.center);
    }

    bool disjoint(const padic_ball& other) const { return !contains(other) && !other.contains(*this); }
};

/// Haar measure of the circle {|xi|_p = p^(-n)}: (1 - 1/p) p^(-n).
inline rational circle_measure(int p, int n) {
    if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
    const big_int bp(p);
    rational scale = n >= 0 ? rational(big_int(1), boost::multiprecision::pow(bp, n))
                            : rational(boost::multiprecision::pow(bp, -n));
    return rational(bp - 1, bp) * scale;
}

namespace detail {

inline std::size_t checked_count(int p, int exponent, std::size_t multiplier, std::size_t cap,
                                 const char* parameter) {
    long double count = static_cast<long double>(multiplier) * std::pow(static_cast<long double>(p), exponent);
    if (count > static_cast<long double>(cap))
        throw math_error(error_kind::capacity, parameter,
                         "representative count " + std::to_string(static_cast<double>(count)) + " exceeds cap " +
                             std::to_string(cap));
    return static_cast<std::size_t>(count + 0.5L);
}

}  // namespace detail

/// One representative per coset of p^(n+depth) Z_p inside {|xi|_p = p^(-n)},
/// ordered by leading digit, then by the remaining digits little-endian.
inline std::vector<padic_number> circle_representatives(int p, int n, int depth,
                                                        std::size_t cap = default_coset_cap) {
    if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
    if (depth < 1) throw math_error(error_kind::invalid_argument, "depth", "depth must be >= 1");
    const std::size_t tails = detail::checked_count(p, depth - 1, 1, cap, "depth");
    detail::checked_count(p, depth - 1, static_cast<std::size_t>(p - 1), cap, "depth");
    const int precision = std::max(depth, padic_number::default_precision);
    std::vector<padic_number> out;
    out.reserve(static_cast<std::size_t>(p - 1) * tails);
    std::vector<int> digits(static_cast<std::size_t>(precision), 0);
    for (int lead = 1; lead < p; ++lead) {
        for (std::size_t t = 0; t < tails; ++t) {
            digits[0] = lead;
            std::size_t rest = t;
            for (int i = 1; i < depth; ++i) {
                digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(p));
                rest /= static_cast<std::size_t>(p);
            }
            out.push_back(padic_number::make(p, n, digits));
        }
    }
    return out;
}

/// One representative per coset of p^level Z_p inside `ball`
/// (center + p^(-r) t for t in [0, p^(level + r))).
inline std::vector<padic_number> coset_representatives(const padic_ball& ball, int level,
                                                       std::size_t cap = default_coset_cap) {
    const int p = ball.prime();
    const int r = ball.radius_exponent;
    if (level + r <= 0) return {ball.center};
    const std::size_t count = detail::checked_count(p, level + r, 1, cap, "level");
    std::vector<padic_number> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        out.push_back(ball.center + padic_number::from_integer(p, static_cast<std::int64_t>(t)).shifted(-r));
    }
    return out;
}

}  // namespace padic_lfn
