#pragma once

#include "padic_lfn/errors.hpp"
#include "padic_lfn/padic.hpp"
#include "padic_lfn/scalar.hpp"
#include "padic_lfn/twist.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace padic_lfn {

/// Integrand on a circle, declared constant on cosets of p^level Z_p.
struct circle_integrand {
    std::function<complex_value(const padic_number&)> eval;
    int level = 0;
};

struct quadrature_options {
    std::size_t coset_cap = default_coset_cap;
    int spot_checks = 2;
    std::uint64_t seed = 0x5eed;
};

/// Exact Haar integral over {|xi|_p = p^(-n)}: sum of f(rep) * coset measure.
inline complex_value integrate_circle(const circle_integrand& f, int p, int n, const quadrature_options& opts = {}) {
    const int depth = std::max(1, f.level - n);
    const auto reps = circle_representatives(p, n, depth, opts.coset_cap);
    const double measure = std::pow(static_cast<double>(p), -(n + depth));

    complex_value sum(0, 0);
    for (const auto& r : reps) sum += f.eval(r);

    if (opts.spot_checks > 0) {
        std::mt19937_64 rng(opts.seed ^ (static_cast<std::uint64_t>(p) << 32) ^ static_cast<std::uint64_t>(n + 1024));
        std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
        std::uniform_int_distribution<std::int64_t> tail(1, std::int64_t{p} * p * p * p - 1);
        for (int i = 0; i < opts.spot_checks; ++i) {
            const auto& r = reps[pick(rng)];
            const auto moved = r + padic_number::from_integer(p, tail(rng)).shifted(n + depth);
            const complex_value a = f.eval(r), b = f.eval(moved);
            if (std::abs(a - b) > 1e-9 * (1.0 + std::abs(a)))
                throw math_error(error_kind::locality, "level",
                                 "integrand not constant on cosets of p^" + std::to_string(n + depth) + " Z_p");
        }
    }
    return sum * measure;
}

inline constexpr double pole_epsilon = 1e-12;

/// Closed form (t - p^(s-1)) / (t (1 - t p^(-s))) for twist base t; 0 when t = 0.
template <class Real = double>
complex_of<Real> twisted_gamma(int p, const complex_of<Real>& t, const complex_of<Real>& s) {
    using C = complex_of<Real>;
    using std::abs;
    const C zero(Real(0), Real(0)), one(Real(1), Real(0));
    if (t == zero) return zero;
    const C damp = one - t * prime_power<Real>(p, -s);
    if (abs(damp) < Real(pole_epsilon))
        throw math_error(error_kind::pole, "s", "gamma denominator 1 - t p^(-s) vanishes at p=" + std::to_string(p));
    return (t - prime_power<Real>(p, s - one)) / (t * damp);
}

/// Which gamma function (standard, character twisted, modular a_i) at which s.
struct gamma_spec {
    twist datum;
    complex_value s;

    static gamma_spec standard(int p, complex_value s) { return {twist::none(p), s}; }
    static gamma_spec character_twisted(const dirichlet_character& chi, int p, complex_value s) {
        return {twist::character(chi, p), s};
    }
    static gamma_spec modular(int which, complex_value a_i, int p, complex_value s) {
        return {twist::modular(which, a_i, p), s};
    }

    int prime() const noexcept { return datum.prime(); }
};

inline complex_value gamma_closed_form(const gamma_spec& spec) {
    return twisted_gamma<double>(spec.prime(), spec.datum.base(), spec.s);
}

struct gamma_quadrature_result {
    complex_value value;
    double remainder_bound = 0;
    complex_value inner;  // |xi| < 1, circles n = 1..N
    complex_value unit;   // |xi| = 1
    complex_value outer;  // |xi| > 1
    int inner_circles = 0;
    int outer_circles = 0;
};

struct gamma_quadrature_options {
    int outer_circles = 2;
    quadrature_options quadrature;
};

/// Defining integral of the (twisted) gamma function evaluated circle by circle.
/// Inner circles are truncated at N; the geometric remainder is reported.
inline gamma_quadrature_result gamma_by_quadrature(const gamma_spec& spec, int N,
                                                   const gamma_quadrature_options& opts = {}) {
    if (N < 0) throw math_error(error_kind::invalid_argument, "N", "number of inner circles must be >= 0");
    const int p = spec.prime();
    gamma_quadrature_result result;
    result.inner_circles = N;
    result.outer_circles = opts.outer_circles;
    if (spec.datum.degenerate()) return result;

    const double q = std::abs(spec.datum.base()) * std::pow(static_cast<double>(p), -spec.s.real());
    if (!(q < 1.0))
        throw math_error(error_kind::nonconvergent, "s",
                         "inner-circle series needs |t p^(-s)| < 1 (Re(s) > 0 for characters); got " +
                             std::to_string(q));

    const twist& datum = spec.datum;
    const complex_value s = spec.s;
    // e^{2 pi i xi} |xi|^(s-1) twist(|xi|^-1), and |xi|^-1 = p^v(xi).
    auto integrand = [p, s, &datum](const padic_number& xi) {
        const int v = xi.valuation();
        return additive_character(xi) * prime_power(p, -static_cast<double>(v) * (s - 1.0)) * datum.at_power(v);
    };

    for (int n = 1; n <= N; ++n)
        result.inner += integrate_circle({integrand, n + 1}, p, n, opts.quadrature);
    result.unit = integrate_circle({integrand, 1}, p, 0, opts.quadrature);
    for (int j = 1; j <= opts.outer_circles; ++j)
        result.outer += integrate_circle({integrand, 0}, p, -j, opts.quadrature);

    result.value = result.inner + result.unit + result.outer;
    result.remainder_bound = (1.0 - 1.0 / p) * std::pow(q, N + 1) / (1.0 - q);
    return result;
}

}  // namespace padic_lfn
