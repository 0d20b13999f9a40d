#pragma once

#include "padic_lfn/arith.hpp"
#include "padic_lfn/dirichlet.hpp"
#include "padic_lfn/lseries.hpp"
#include "padic_lfn/modular.hpp"
#include "padic_lfn/padic.hpp"
#include "padic_lfn/quadrature.hpp"
#include "padic_lfn/scalar.hpp"
#include "padic_lfn/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <functional>
#include <string>
#include <vector>

namespace padic_lfn {

/// Outcome of one acceptance check family. `worst` is the largest observed
/// error / allowed error ratio (<= 1 passes); exact checks report 0 or 1.
struct check_result {
    int id = 0;
    std::string name;
    long checks = 0;
    long failures = 0;
    double worst = 0;
    std::string first_failure;

    bool passed() const noexcept { return checks > 0 && failures == 0; }
};

struct selftest_options {
    int M = 64;
    int gamma_circles = 64;
    std::int64_t prime_bound = 100'000;
    std::int64_t series_length = 1'000'000;
    int tau_max = 5000;
    int kernel_radius = 64;
    series_options series;
};

namespace detail {

class tally {
public:
    explicit tally(int id, std::string name) { r_.id = id; r_.name = std::move(name); }

    /// Passes when err <= allowed (NaN fails).
    void within(double err, double allowed, const std::string& what) {
        ++r_.checks;
        const double ratio = allowed > 0 ? err / allowed : (err == 0 ? 0.0 : INFINITY);
        const bool ok = err <= allowed;
        if (ok) {
            r_.worst = std::max(r_.worst, ratio);
        } else {
            fail(what + ": error " + fmt(err) + " > allowed " + fmt(allowed));
            r_.worst = std::isnan(ratio) ? INFINITY : std::max(r_.worst, ratio);
        }
    }

    void exact(bool ok, const std::string& what) {
        ++r_.checks;
        if (!ok) {
            fail(what);
            r_.worst = std::max(r_.worst, 2.0);
        }
    }

    /// Records an unexpected exception as a failed check.
    template <class Fn>
    void guard(const std::string& what, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            ++r_.checks;
            fail(what + ": " + e.what());
        }
    }

    check_result result() const { return r_; }

private:
    static std::string fmt(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", x);
        return buf;
    }
    void fail(const std::string& msg) {
        if (r_.failures++ == 0) r_.first_failure = msg;
    }
    check_result r_;
};

inline std::string label_of(int p, const std::string& rest) { return "p=" + std::to_string(p) + " " + rest; }

inline std::string s_label(complex_value s) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "s=%g%+gi", s.real(), s.imag());
    return buf;
}

inline const std::vector<complex_value>& gamma_grid_s() {
    static const std::vector<complex_value> s{{0.3, 0}, {0.9, 0}, {2, 0}, {0.5, 14.1}};
    return s;
}

/// Every (p, chi) pair of the gamma grid: p in {2,3,5,7}, k in {1,3,4,5,8}, p not dividing k.
inline void for_gamma_grid(const std::function<void(int, const dirichlet_character&)>& fn) {
    for (int p : {2, 3, 5, 7})
        for (int k : {1, 3, 4, 5, 8}) {
            if (k % p == 0) continue;
            for (const auto& chi : enumerate_characters(k)) fn(p, chi);
        }
}

/// tau(n) through divisor sums: (65 s11(n) + 691 s5(n) - 691*252 sum_{j<n} s5(j) s5(n-j)) / 756.
inline big_int tau_divisor_sums(int n) {
    auto sigma = [](int m, int e) {
        big_int s = 0;
        for (int d = 1; d <= m; ++d)
            if (m % d == 0) s += boost::multiprecision::pow(big_int(d), e);
        return s;
    };
    big_int conv = 0;
    for (int j = 1; j < n; ++j) conv += sigma(j, 5) * sigma(n - j, 5);
    return (65 * sigma(n, 11) + 691 * sigma(n, 5) - 691 * 252 * conv) / 756;
}

}  // namespace detail

inline check_result check_gamma_oracle(const selftest_options& o = {}) {
    detail::tally t(1, "gamma quadrature matches closed form");
    detail::for_gamma_grid([&](int p, const dirichlet_character& chi) {
        for (auto s : detail::gamma_grid_s()) {
            const std::string what = detail::label_of(p, "chi=" + chi.label() + " " + detail::s_label(s));
            t.guard(what, [&] {
                const auto spec = gamma_spec::character_twisted(chi, p, s);
                const auto q = gamma_by_quadrature(spec, o.gamma_circles);
                t.within(std::abs(q.value - gamma_closed_form(spec)), q.remainder_bound + 1e-10, what);
            });
        }
    });
    return t.result();
}

inline check_result check_trivial_reduction() {
    detail::tally t(2, "trivial character gives the standard gamma");
    detail::for_gamma_grid([&](int p, const dirichlet_character& chi) {
        if (!chi.is_principal()) return;
        for (auto s : detail::gamma_grid_s()) {
            const std::string what = detail::label_of(p, "k=" + std::to_string(chi.modulus()) + " " + detail::s_label(s));
            t.guard(what, [&] {
                const complex_value got = gamma_closed_form(gamma_spec::character_twisted(chi, p, s));
                const complex_value pp(p, 0);
                const complex_value want = (1.0 - std::pow(pp, s - 1.0)) / (1.0 - std::pow(pp, -s));
                t.within(std::abs(got - want), 1e-12, what);
            });
        }
    });
    return t.result();
}

inline check_result check_reflection() {
    detail::tally t(3, "reflection Gamma_chi(s) Gamma_conj(chi)(1-s) = 1");
    detail::for_gamma_grid([&](int p, const dirichlet_character& chi) {
        for (auto s : detail::gamma_grid_s()) {
            const std::string what = detail::label_of(p, "chi=" + chi.label() + " " + detail::s_label(s));
            t.guard(what, [&] {
                const complex_value a = gamma_closed_form(gamma_spec::character_twisted(chi, p, s));
                const complex_value b = gamma_closed_form(gamma_spec::character_twisted(chi.conjugate(), p, 1.0 - s));
                t.within(std::abs(a * b - 1.0), 1e-10, what);
            });
        }
    });
    return t.result();
}

/// Kernel evaluation against eigenvalue * wavelet, carried out in 50-digit arithmetic:
/// modular eigenvalues reach 1e15 and the comparison is absolute at 1e-8.
inline check_result check_eigenrelation(const selftest_options& o = {}) {
    detail::tally t(4, "kernel action equals spectral action on wavelets");
    using C = complex_of<hp_real>;
    const auto delta = coefficient_provider::delta(16);
    const auto chi4 = character(4, 1);
    const auto chi5 = character(5, 1);
    for (int p : {2, 3, 5}) {
        const auto fac = factorize_local(delta, p);
        const auto& chi = (p == 5) ? chi4 : chi5;  // a nonprincipal character with chi(p) != 0
        for (double a : {0.5, 1.0, 1.7}) {
            const complex_value alpha(a, 0);
            const std::vector<std::pair<std::string, operator_spec>> ops{
                {"plain", operator_spec::plain(p, alpha)},
                {"character " + chi.label(), operator_spec::character_twisted(chi, p, alpha)},
                {"modular_a1", operator_spec::modular(1, fac.root1, p, alpha)},
                {"modular_a2", operator_spec::modular(2, fac.root2, p, alpha)},
            };
            for (const auto& [name, op] : ops)
                for (int label = 0; label <= 3; ++label) {
                    const auto idx = wavelet_index::from_ket(p, label);
                    const std::int64_t units[] = {0, 1, p + 1, p * p + p - 1, 2 * p * p * p + 1};
                    for (auto u : units) {
                        const auto xi = padic_number::from_integer(p, u).shifted(label - 1);
                        const std::string what = detail::label_of(
                            p, name + " alpha=" + std::to_string(a).substr(0, 3) + " ket=" + std::to_string(label) +
                                   " xi=" + std::to_string(u) + "*p^" + std::to_string(label - 1));
                        t.guard(what, [&] {
                            const auto k = apply_kernel<hp_real>(op, idx, xi, o.kernel_radius);
                            const C want = eigenvalue<hp_real>(op, label) * wavelet_eval<hp_real>(idx, xi);
                            using std::abs;
                            const double residual = static_cast<double>(abs(k.value - want));
                            t.within(residual, static_cast<double>(k.tail_bound) + 1e-8, what);
                        });
                    }
                }
        }
    }
    return t.result();
}

inline check_result check_local_traces(const selftest_options& o = {}) {
    detail::tally t(5, "local traces match closed local factors");
    auto compare = [&](const trace_request& req, const std::string& what) {
        t.guard(what, [&] {
            const auto tr = local_trace(req);
            const double diff = std::abs(tr.value - local_factor_closed(req));
            t.within(diff, tr.remainder_bound, what);
            t.within(tr.remainder_bound, 1e-8, what + " (bound vs tolerance)");
        });
    };
    const std::vector<complex_value> small_s{{1, 0}, {2, 0}, {0.5, 3}};
    for (int p : {2, 3, 5, 7}) {
        for (auto s : small_s) compare(trace_request::zeta(p, s, o.M), detail::label_of(p, "zeta " + detail::s_label(s)));
        for (int k = 1; k <= 8; ++k) {
            if (k % p == 0) continue;
            for (const auto& chi : enumerate_characters(k))
                for (auto s : small_s)
                    compare(trace_request::dirichlet(chi, p, s, o.M),
                            detail::label_of(p, "chi=" + chi.label() + " " + detail::s_label(s)));
        }
    }
    const auto delta = coefficient_provider::delta(16);
    for (int p : {2, 3, 5, 7})
        for (double s : {7.0, 8.0})
            compare(trace_request::modular(delta, p, {s, 0}, o.M), detail::label_of(p, "delta " + detail::s_label(s)));
    return t.result();
}

inline check_result check_global(const selftest_options& o = {}) {
    detail::tally t(6, "Euler product and Dirichlet series reach classical values");
    const double pi = pi_v<double>();
    t.guard("zeta(2) Euler product", [&] {
        const auto e = euler_product(trivial_character(), {2, 0}, o.prime_bound, o.series);
        t.within(std::abs(e.value - pi * pi / 6), 1e-5, "zeta(2) Euler product");
    });
    t.guard("L(1, chi_4) series", [&] {
        const auto d = dirichlet_series(character(4, 1), {1, 0}, o.series_length, o.series);
        t.within(std::abs(d.value - pi / 4), 1e-6, "L(1, chi_4) series");
    });
    return t.result();
}

inline check_result check_tau(const selftest_options& o = {}) {
    detail::tally t(7, "Ramanujan tau suite");
    const auto tau = delta_expansion(o.tau_max);
    const int N = o.tau_max;
    auto at = [&](std::int64_t n) -> const big_int& { return tau[static_cast<std::size_t>(n - 1)]; };

    long bad_mult = 0, pairs = 0;
    for (int m = 2; m <= N; ++m)
        for (int n = m + 1; static_cast<long>(m) * n <= N; ++n)
            if (std::gcd(m, n) == 1) {
                ++pairs;
                if (at(static_cast<std::int64_t>(m) * n) != at(m) * at(n)) ++bad_mult;
            }
    t.exact(bad_mult == 0, std::to_string(bad_mult) + " of " + std::to_string(pairs) + " coprime pairs not multiplicative");

    const auto f = coefficient_provider::delta(N);
    for (int p : primes_up_to(19)) {
        for (int m = 1; ipow_int(p, m + 1) <= N; ++m)
            t.exact(verify_recursion(f, p, m) == 0.0, detail::label_of(p, "Hecke recursion m=" + std::to_string(m)));
    }
    for (int p : primes_up_to(97)) {
        const big_int lhs = at(p) * at(p);
        const big_int rhs = 4 * boost::multiprecision::pow(big_int(p), 11);
        t.exact(lhs <= rhs, detail::label_of(p, "Deligne bound"));
    }
    const big_int spot[] = {-24, 252, -1472};
    for (int n = 2; n <= 4; ++n) {
        t.exact(at(n) == spot[n - 2], "expansion tau(" + std::to_string(n) + ")");
        t.exact(detail::tau_divisor_sums(n) == spot[n - 2], "divisor-sum tau(" + std::to_string(n) + ")");
    }
    t.exact(at(2) * at(2) - big_int(2048) == spot[2], "tau(4) from tau(2) by the Hecke recursion");
    return t.result();
}

inline check_result check_factorization() {
    detail::tally t(8, "local factorization identities");
    const auto f = coefficient_provider::delta(64);
    for (int p : primes_up_to(19)) {
        const auto fac = factorize_local(f, p);
        const complex_value ap = f.coefficient(p);
        const double pk = std::pow(double(p), 11);
        const std::string what = detail::label_of(p, "");
        t.within(std::abs(fac.root1 + fac.root2 - ap), 1e-9 * std::max(1.0, std::abs(ap)), what + "a1 + a2 = a(p)");
        t.within(std::abs(fac.root1 * fac.root2 - pk), 1e-9 * pk, what + "a1 a2 = p^11");
        const double mod = std::pow(double(p), 5.5);
        t.within(std::abs(std::abs(fac.root1) - mod), 1e-9 * mod, what + "|a1| = p^(11/2)");
        t.within(std::abs(std::abs(fac.root2) - mod), 1e-9 * mod, what + "|a2| = p^(11/2)");
    }
    for (int p : {2, 3, 5, 7}) {
        const auto fac = factorize_local(f, p);
        for (int m = 0; m <= 12; ++m) {
            const complex_value lhs = symmetric_power_sum(fac, m);
            const complex_value rhs = binomial_side(fac.a_p, fac.hecke_constant, m);
            complex_value direct(0, 0);
            for (int n = 0; n <= m; ++n) direct += ipow(fac.root1, m - n) * ipow(fac.root2, n);
            const double scale = std::pow(std::abs(fac.root1), m) * (m + 1);
            const std::string what = detail::label_of(p, "m=" + std::to_string(m));
            t.within(std::abs(lhs - rhs), 1e-6 * scale, what + " recurrence vs binomial side");
            t.within(std::abs(lhs - direct), 1e-6 * scale, what + " recurrence vs root powers");
        }
    }
    return t.result();
}

inline check_result check_hecke_trace(const selftest_options& o = {}) {
    detail::tally t(9, "conjugated trace gives a(p^l) p^(-sl) L_p");
    const auto f = coefficient_provider::delta(128);
    const complex_value s(8, 0);
    for (int p : {2, 3})
        for (int ell = 0; ell <= 4; ++ell) {
            const std::string what = detail::label_of(p, "l=" + std::to_string(ell));
            t.guard(what, [&] {
                const auto tr = hecke_conjugated_trace(f, p, s, ell, o.M);
                const complex_value closed = local_factor_closed(trace_request::modular(f, p, s));
                const complex_value want = f.coefficient(ipow_int(p, ell)) * prime_power(p, -s * double(ell)) * closed;
                const double rounding = 64 * std::numeric_limits<double>::epsilon() * std::abs(want) * (ell + 1);
                t.within(std::abs(tr.value - want), tr.remainder_bound + rounding, what);
            });
        }
    return t.result();
}

/// Chunked sums must not depend on how many threads evaluate the chunks.
inline check_result check_reduction_determinism(const selftest_options& o = {}) {
    detail::tally t(10, "chunked reductions are thread-count independent");
    series_options one = o.series, many = o.series;
    one.threads = 1;
    many.threads = 3;
    one.chunk_size = many.chunk_size = 4096;
    const auto chi = character(8, 3);
    const auto a = euler_product(chi, {2, 0.5}, 20000, one), b = euler_product(chi, {2, 0.5}, 20000, many);
    t.exact(a.value == b.value && a.remainder_bound == b.remainder_bound, "euler product, 1 vs 3 threads");
    const auto c = dirichlet_series(chi, {1.5, 0}, 50000, one), d = dirichlet_series(chi, {1.5, 0}, 50000, many);
    t.exact(c.value == d.value && c.remainder_bound == d.remainder_bound, "dirichlet series, 1 vs 3 threads");
    return t.result();
}

inline std::vector<check_result> run_selftest(const selftest_options& o = {}) {
    return {check_gamma_oracle(o), check_trivial_reduction(), check_reflection(),   check_eigenrelation(o),
            check_local_traces(o), check_global(o),           check_tau(o),         check_factorization(),
            check_hecke_trace(o),  check_reduction_determinism(o)};
}

}  // namespace padic_lfn
