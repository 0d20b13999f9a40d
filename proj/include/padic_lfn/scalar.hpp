#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>

namespace padic_lfn {

using complex_value = std::complex<double>;
using big_int = boost::multiprecision::cpp_int;
using rational = boost::rational<big_int>;

/// 50-digit real used where double cannot hold the required absolute accuracy
/// (e.g. eigenvalues of size 1e15 compared at 1e-8).
using hp_real = boost::multiprecision::cpp_bin_float_50;

template <class Real>
struct scalar_traits {
    using complex = std::complex<Real>;
};

template <>
struct scalar_traits<hp_real> {
    using complex = boost::multiprecision::cpp_complex_50;
};

template <class Real>
using complex_of = typename scalar_traits<Real>::complex;

template <class Real>
Real pi_v() {
    return boost::math::constants::pi<Real>();
}

template <class Real>
complex_of<Real> promote(const complex_value& z) {
    return complex_of<Real>(Real(z.real()), Real(z.imag()));
}

template <class Real>
complex_value demote(const complex_of<Real>& z) {
    using std::imag;
    using std::real;
    return {static_cast<double>(real(z)), static_cast<double>(imag(z))};
}

/// exp(2*pi*i * num/den); quarter turns are returned exactly.
template <class Real>
complex_of<Real> root_of_unity(std::int64_t num, std::int64_t den) {
    using C = complex_of<Real>;
    std::int64_t t = num % den;
    if (t < 0) t += den;
    if (t == 0) return C(Real(1), Real(0));
    if ((4 * static_cast<__int128>(t)) % den == 0) {
        switch (static_cast<int>((4 * static_cast<__int128>(t)) / den)) {
            case 1: return C(Real(0), Real(1));
            case 2: return C(Real(-1), Real(0));
            default: return C(Real(0), Real(-1));
        }
    }
    using std::cos;
    using std::sin;
    const Real angle = 2 * pi_v<Real>() * Real(t) / Real(den);
    return C(cos(angle), sin(angle));
}

/// exp(2*pi*i*x) for a real x.
template <class Real>
complex_of<Real> unit_phase(const Real& x) {
    using std::cos;
    using std::sin;
    const Real angle = 2 * pi_v<Real>() * x;
    return complex_of<Real>(cos(angle), sin(angle));
}

/// p^z on the principal branch, exp(z * ln p).
template <class Real>
complex_of<Real> prime_power(int p, const complex_of<Real>& z) {
    using std::exp;
    using std::log;
    return exp(z * complex_of<Real>(log(Real(p)), Real(0)));
}

inline complex_value prime_power(int p, complex_value z) {
    return prime_power<double>(p, z);
}

/// Integer power by repeated squaring; negative exponents invert the base.
template <class C>
C ipow(C base, long long n) {
    C one(1);
    if (n < 0) {
        base = one / base;
        n = -n;
    }
    C result = one;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

template <class C>
auto magnitude(const C& z) {
    using std::abs;
    return abs(z);
}

inline std::string to_string(const rational& q) {
    return q.numerator().str() + "/" + q.denominator().str();
}

inline double to_double(const rational& q) {
    return static_cast<double>(boost::multiprecision::cpp_bin_float_double(q.numerator()) /
                               boost::multiprecision::cpp_bin_float_double(q.denominator()));
}

constexpr double machine_epsilon = std::numeric_limits<double>::epsilon();

}  // namespace padic_lfn
