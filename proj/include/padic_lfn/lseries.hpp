#pragma once

#include "padic_lfn/arith.hpp"
#include "padic_lfn/dirichlet.hpp"
#include "padic_lfn/errors.hpp"
#include "padic_lfn/modular.hpp"
#include "padic_lfn/scalar.hpp"
#include "padic_lfn/wavelet.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace padic_lfn {

enum class trace_kind { zeta_local, dirichlet_local, modular_local, hecke_conjugated };

inline const char* to_string(trace_kind k) {
    switch (k) {
        case trace_kind::zeta_local: return "zeta_local";
        case trace_kind::dirichlet_local: return "dirichlet_local";
        case trace_kind::modular_local: return "modular_local";
        case trace_kind::hecke_conjugated: return "hecke_conjugated";
    }
    return "unknown";
}

struct series_result {
    complex_value value;
    double remainder_bound = 0;
    long long terms_used = 0;
    std::string method;
};

struct trace_request {
    trace_kind kind = trace_kind::zeta_local;
    int p = 2;
    complex_value s{2, 0};
    int M = 64;
    std::optional<dirichlet_character> chi;           // dirichlet_local
    std::optional<coefficient_provider> provider;     // modular_local, hecke_conjugated
    int shift = 0;                                    // hecke_conjugated

    static trace_request zeta(int p, complex_value s, int M = 64) { return {trace_kind::zeta_local, p, s, M, {}, {}, 0}; }
    static trace_request dirichlet(const dirichlet_character& chi, int p, complex_value s, int M = 64) {
        return {trace_kind::dirichlet_local, p, s, M, chi, {}, 0};
    }
    static trace_request modular(const coefficient_provider& f, int p, complex_value s, int M = 64) {
        return {trace_kind::modular_local, p, s, M, {}, f, 0};
    }
    static trace_request hecke(const coefficient_provider& f, int p, complex_value s, int shift, int M = 64) {
        return {trace_kind::hecke_conjugated, p, s, M, {}, f, shift};
    }
};

/// Chunking for long sums. Chunks may run concurrently; partial sums are always
/// combined in ascending chunk order, so results do not depend on `threads`.
struct series_options {
    std::size_t chunk_size = 1 << 16;
    unsigned threads = 1;
};

inline constexpr std::int64_t default_prime_cap = 10'000'000;

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();

/// Number of terms of a series dominated by (m+1)^power r^m that exceed eps,
/// i.e. the terms whose rounding can matter. Independent of the truncation.
inline double significant_terms(double r, int power = 0) {
    if (r <= 0) return 1;
    double m = std::ceil(std::log(eps) / std::log(r));
    if (power > 0) m += power * std::ceil(std::log(std::max(m, 2.0)) / -std::log(r));
    return m + 1;
}

/// Floating-point allowance for comparing a truncated power series with its closed
/// form. Deliberately independent of the truncation so bounds stay monotone.
inline double geometric_rounding(double r, double abs_sum, int power = 0) {
    const double K = significant_terms(r, power) + 2;
    return 32.0 * eps * K * K * abs_sum * abs_sum;
}

inline void require_prime(int p) {
    if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
}

inline void require_truncation(int M) {
    if (M < 0) throw math_error(error_kind::invalid_argument, "M", "truncation must be >= 0");
}

struct modular_local_data {
    local_factorization fac;
    operator_spec op1, op2;
    double r;  // max |a_i| p^(-Re s)
};

inline modular_local_data modular_setup(const coefficient_provider& f, int p, complex_value s) {
    const auto fac = factorize_local(f, p);
    if (fac.root1 == complex_value(0, 0) || fac.root2 == complex_value(0, 0))
        throw math_error(error_kind::degenerate_twist, "p",
                         "a_i(p) = 0 at p=" + std::to_string(p) +
                             ": the twisted operator is the identity and its trace diverges");
    const double r = std::max(std::abs(fac.root1), std::abs(fac.root2)) * std::pow(double(p), -s.real());
    if (!(r < 1.0))
        throw math_error(error_kind::nonconvergent, "s",
                         "modular trace needs max|a_i(p)| p^(-Re s) < 1; got " + std::to_string(r));
    return {fac, operator_spec::modular(1, fac.root1, p, -s), operator_spec::modular(2, fac.root2, p, -s), r};
}

/// sum_{m > M} (m+1) r^m.
inline double lattice_tail(double r, int M) {
    return std::pow(r, M + 1) * ((M + 2) - (M + 1) * r) / ((1 - r) * (1 - r));
}

/// Triangle sum sum_{m1+m2 <= M} lambda1^(m1+o1) lambda2^(m2+o2) over eigenvalues.
inline complex_value lattice_trace(const operator_spec& op1, const operator_spec& op2, int M, int o1 = 0, int o2 = 0) {
    std::vector<complex_value> e1(static_cast<std::size_t>(M) + 1), e2(static_cast<std::size_t>(M) + 1);
    for (int m = 0; m <= M; ++m) {
        e1[m] = eigenvalue(op1, m + o1);
        e2[m] = eigenvalue(op2, m + o2);
    }
    complex_value sum(0, 0);
    for (int m = 0; m <= M; ++m) {
        complex_value diag(0, 0);
        for (int m1 = 0; m1 <= m; ++m1) diag += e1[m1] * e2[m - m1];
        sum += diag;
    }
    return sum;
}

inline double prime_sum_tail(double beta, double P) {
    // sum_{p > P} p^(-beta) <= beta * 1.25506/ln P * P^(1-beta)/(beta-1), from pi(x) < 1.25506 x/ln x
    // (x > 1), integrated by parts; the plain integer bound P^(1-beta)/(beta-1) is used when smaller.
    const double integer_bound = std::pow(P, 1 - beta) / (beta - 1);
    if (P < 2) return integer_bound;
    return std::min(integer_bound, beta * 1.25506 / std::log(P) * integer_bound);
}

template <class Fn>
std::vector<std::pair<complex_value, double>> chunked(std::int64_t count, const series_options& opts, Fn&& chunk_fn) {
    const std::int64_t size = static_cast<std::int64_t>(std::max<std::size_t>(1, opts.chunk_size));
    const std::int64_t chunks = (count + size - 1) / size;
    std::vector<std::pair<complex_value, double>> parts(static_cast<std::size_t>(chunks));
    if (opts.threads <= 1 || chunks <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c) parts[c] = chunk_fn(c * size, std::min(count, (c + 1) * size));
        return parts;
    }
    for (std::int64_t base = 0; base < chunks; base += opts.threads) {
        std::vector<std::future<std::pair<complex_value, double>>> jobs;
        const std::int64_t stop = std::min<std::int64_t>(chunks, base + opts.threads);
        for (std::int64_t c = base; c < stop; ++c)
            jobs.push_back(std::async(std::launch::async, chunk_fn, c * size, std::min(count, (c + 1) * size)));
        for (std::int64_t c = base; c < stop; ++c) parts[c] = jobs[c - base].get();
    }
    return parts;
}

}  // namespace detail

/// Closed-form local factor: 1/(1 - chi(p) p^-s) or 1/(1 - a(p) p^-s + chi(p) p^(k-1-2s)).
inline complex_value local_factor_closed(const trace_request& req) {
    detail::require_prime(req.p);
    const complex_value x = prime_power(req.p, -req.s);
    complex_value denom;
    switch (req.kind) {
        case trace_kind::zeta_local: denom = 1.0 - x; break;
        case trace_kind::dirichlet_local:
            if (!req.chi) throw math_error(error_kind::invalid_argument, "chi", "dirichlet request needs a character");
            denom = 1.0 - (*req.chi)(req.p) * x;
            break;
        case trace_kind::modular_local:
        case trace_kind::hecke_conjugated: {
            if (!req.provider) throw math_error(error_kind::invalid_argument, "provider", "modular request needs a provider");
            const auto& f = *req.provider;
            denom = 1.0 - f.coefficient(req.p) * x + f.hecke_constant(req.p) * x * x;
            break;
        }
    }
    if (std::abs(denom) < pole_epsilon)
        throw math_error(error_kind::pole, "s", "local factor denominator vanishes at p=" + std::to_string(req.p));
    return 1.0 / denom;
}

/// Local Euler factor as an operator trace over H_- (or H_- x H_-), truncated at
/// label (total degree) M. The bound covers the geometric tail and rounding.
inline series_result local_trace(const trace_request& req) {
    detail::require_prime(req.p);
    detail::require_truncation(req.M);
    const int p = req.p, M = req.M;
    series_result out;
    out.terms_used = M + 1;

    if (req.kind == trace_kind::zeta_local || req.kind == trace_kind::dirichlet_local) {
        operator_spec op = operator_spec::plain(p, -req.s);
        if (req.kind == trace_kind::dirichlet_local) {
            if (!req.chi) throw math_error(error_kind::invalid_argument, "chi", "dirichlet request needs a character");
            op = operator_spec::character_twisted(*req.chi, p, -req.s);
            if (op.identity())
                throw math_error(error_kind::degenerate_twist, "p",
                                 "chi(p) = 0 since p=" + std::to_string(p) + " divides k=" +
                                     std::to_string(req.chi->modulus()) +
                                     ": the twisted operator is the identity and its trace diverges (local factor is 1)");
        }
        const double q = std::abs(eigen_base(op));
        if (!(q < 1.0))
            throw math_error(error_kind::nonconvergent, "s",
                             "trace needs |chi(p) p^(-s)| < 1 (Re(s) > 0); got " + std::to_string(q));
        complex_value sum(0, 0);
        for (int m = 0; m <= M; ++m) sum += eigenvalue(op, m);
        out.value = sum;
        out.remainder_bound = std::pow(q, M + 1) / (1 - q) + detail::geometric_rounding(q, 1 / (1 - q));
        out.method = req.kind == trace_kind::zeta_local ? "trace:plain" : "trace:character";
        return out;
    }

    if (req.kind == trace_kind::hecke_conjugated)
        throw math_error(error_kind::invalid_argument, "kind", "use hecke_conjugated_trace for conjugated traces");
    if (!req.provider) throw math_error(error_kind::invalid_argument, "provider", "modular request needs a provider");
    const auto d = detail::modular_setup(*req.provider, p, req.s);
    out.value = detail::lattice_trace(d.op1, d.op2, M);
    out.terms_used = static_cast<long long>(M + 1) * (M + 2) / 2;
    const double abs_sum = 1 / ((1 - d.r) * (1 - d.r));
    out.remainder_bound = detail::lattice_tail(d.r, M) + detail::geometric_rounding(d.r, abs_sum, 1);
    out.method = "trace:modular_tensor";
    return out;
}

/// Tr sum_k a_+^k D1 a_-^k (x) a_+^(l-k) D2 a_-^(l-k) over the truncated lattice of
/// H_- x H_-. a_-^k moves |m> to |m+k> and a_+^k moves it back, so each diagonal
/// entry is lambda1^(m1+k) lambda2^(m2+l-k).
inline series_result hecke_conjugated_trace(const coefficient_provider& f, int p, complex_value s, int ell, int M = 64) {
    detail::require_prime(p);
    detail::require_truncation(M);
    if (ell < 0) throw math_error(error_kind::invalid_argument, "l", "shift must be >= 0");
    if (M < ell) throw math_error(error_kind::invalid_argument, "M", "truncation must be >= shift");
    const auto d = detail::modular_setup(f, p, s);
    series_result out;
    for (int k = 0; k <= ell; ++k) out.value += detail::lattice_trace(d.op1, d.op2, M, k, ell - k);
    out.terms_used = static_cast<long long>(ell + 1) * (M + 1) * (M + 2) / 2;
    const double lead = (ell + 1) * std::pow(d.r, ell);
    const double abs_sum = 1 / ((1 - d.r) * (1 - d.r));
    out.remainder_bound = lead * (detail::lattice_tail(d.r, M) + detail::geometric_rounding(d.r, abs_sum, 1 + ell));
    out.method = "trace:hecke_conjugated";
    return out;
}

/// Tr a_+^l D_chi a_-^l over H_- = (chi(p) p^-s)^l L_p(s, chi), truncated at label M.
inline series_result hecke_conjugated_trace(const dirichlet_character& chi, int p, complex_value s, int ell, int M = 64) {
    if (ell < 0) throw math_error(error_kind::invalid_argument, "l", "shift must be >= 0");
    auto base = local_trace(trace_request::dirichlet(chi, p, s, M));
    const operator_spec op = operator_spec::character_twisted(chi, p, -s);
    complex_value sum(0, 0);
    for (int m = 0; m <= M; ++m) sum += eigenvalue(op, m + ell);
    const double lead = std::pow(std::abs(eigen_base(op)), ell);
    return {sum, lead * base.remainder_bound * (1 + ell), M + 1, "trace:hecke_conjugated_character"};
}

/// sum_{m=l}^{M} h_m p^(-sm) with h_m = sum_{m1} a_1^m1 a_2^(m-m1): the lattice region
/// m1 + m2 >= l. Equals L_(p) - sum_{m<l} h_m p^(-sm) up to the tail.
inline series_result lattice_region_sum(const coefficient_provider& f, int p, complex_value s, int ell, int M = 64) {
    detail::require_prime(p);
    detail::require_truncation(M);
    if (ell < 0 || M < ell) throw math_error(error_kind::invalid_argument, "l", "need 0 <= shift <= M");
    const auto d = detail::modular_setup(f, p, s);
    const complex_value x = prime_power(p, -s);
    complex_value sum(0, 0);
    for (int m = ell; m <= M; ++m) sum += symmetric_power_sum(d.fac, m) * ipow(x, m);
    const double abs_sum = 1 / ((1 - d.r) * (1 - d.r));
    return {sum, detail::lattice_tail(d.r, M) + detail::geometric_rounding(d.r, abs_sum, 1), M - ell + 1,
            "lattice_region"};
}

/// prod_{p <= P} of closed local factors of L(s, chi), with a certified bound on
/// the omitted primes. Needs Re(s) > 1.
inline series_result euler_product(const dirichlet_character& chi, complex_value s, std::int64_t P,
                                   const series_options& opts = {}) {
    const double sigma = s.real();
    if (!(sigma > 1))
        throw math_error(error_kind::nonconvergent, "s", "Euler product needs Re(s) > 1; got " + std::to_string(sigma));
    if (P < 2 || P > default_prime_cap)
        throw math_error(error_kind::invalid_argument, "P", "prime bound must lie in [2, 1e7]");
    const auto primes = primes_up_to(P);
    auto parts = detail::chunked(static_cast<std::int64_t>(primes.size()), opts, [&](std::int64_t lo, std::int64_t hi) {
        complex_value prod(1, 0);
        double rel = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
            const std::int64_t p = primes[i];
            const complex_value x = chi(p) * prime_power(static_cast<int>(p), -s);
            prod *= 1.0 / (1.0 - x);
            const double ax = std::abs(x);
            rel += 4 * detail::eps + (std::abs(s) * std::log(double(p)) + 4) * detail::eps * ax / (1 - ax);
        }
        return std::pair{prod, rel};
    });
    complex_value prod(1, 0);
    double rel = 0;
    for (const auto& [v, r] : parts) {
        prod *= v;
        rel += r + 4 * detail::eps;
    }
    const double Pd = static_cast<double>(P);
    const double delta = detail::prime_sum_tail(sigma, Pd) / (1 - std::pow(Pd, -sigma));
    return {prod, std::abs(prod) * (std::expm1(delta) + rel), static_cast<long long>(primes.size()), "euler_product"};
}

/// prod_{p <= P} 1/(1 - a(p) p^-s + chi(p) p^(k-1-2s)). Needs Re(s) > 1 + k/2 and a
/// provider covering P. The omitted primes are bounded with |a_i(p)| <= p^((k-1)/2).
inline series_result euler_product(const coefficient_provider& f, complex_value s, std::int64_t P,
                                   const series_options& opts = {}) {
    const double sigma = s.real();
    const double k = f.weight();
    if (!(sigma > 1 + k / 2))
        throw math_error(error_kind::nonconvergent, "s",
                         "modular Euler product needs Re(s) > 1 + k/2 = " + std::to_string(1 + k / 2));
    if (P < 2 || P > f.max_index())
        throw math_error(error_kind::out_of_range, "P",
                         "prime bound must lie in [2, " + std::to_string(f.max_index()) + "] (coefficient range)");
    const auto primes = primes_up_to(P);
    auto parts = detail::chunked(static_cast<std::int64_t>(primes.size()), opts, [&](std::int64_t lo, std::int64_t hi) {
        complex_value prod(1, 0);
        double rel = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
            const int p = static_cast<int>(primes[i]);
            const complex_value x = prime_power(p, -s);
            const complex_value denom = 1.0 - f.coefficient(p) * x + f.hecke_constant(p) * x * x;
            prod *= 1.0 / denom;
            const double u = std::pow(double(p), (k - 1) / 2 - sigma);
            rel += 4 * detail::eps + (std::abs(s) * std::log(double(p)) + 8) * detail::eps * 3 * u / ((1 - u) * (1 - u));
        }
        return std::pair{prod, rel};
    });
    complex_value prod(1, 0);
    double rel = 0;
    for (const auto& [v, r] : parts) {
        prod *= v;
        rel += r + 4 * detail::eps;
    }
    const double Pd = static_cast<double>(P);
    const double beta = sigma - (k - 1) / 2;
    const double delta = 2 * detail::prime_sum_tail(beta, Pd) / (1 - std::pow(Pd, -beta));
    return {prod, std::abs(prod) * (std::expm1(delta) + rel), static_cast<long long>(primes.size()),
            "euler_product_modular"};
}

namespace detail {

/// Largest |sum_{a < n <= b} chi(n)| over all intervals.
inline double max_interval_sum(const dirichlet_character& chi) {
    const auto k = chi.modulus();
    std::vector<complex_value> partial(static_cast<std::size_t>(k) + 1, complex_value(0, 0));
    for (std::int64_t n = 1; n <= k; ++n) partial[n] = partial[n - 1] + chi(n);
    double best = 0;
    for (std::size_t i = 0; i < partial.size(); ++i)
        for (std::size_t j = i + 1; j < partial.size(); ++j) best = std::max(best, std::abs(partial[j] - partial[i]));
    return best;
}

/// Nonzero values are real and strictly alternate in sign, across period boundaries too.
inline bool alternating_real(const dirichlet_character& chi) {
    if (!chi.is_real()) return false;
    std::vector<double> signs;
    for (std::int64_t n = 1; n <= chi.modulus(); ++n)
        if (!chi.vanishes_at(n)) signs.push_back(chi(n).real());
    if (signs.size() % 2 != 0) return false;
    for (std::size_t i = 1; i < signs.size(); ++i)
        if (signs[i] * signs[i - 1] >= 0) return false;
    return true;
}

template <class Term>
std::pair<complex_value, double> partial_sum(std::int64_t N, const series_options& opts, Term&& term) {
    auto parts = chunked(N, opts, [&](std::int64_t lo, std::int64_t hi) {
        complex_value sum(0, 0);
        double err = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto [t, rel] = term(i + 1);
            sum += t;
            err += std::abs(t) * rel + eps * std::abs(sum);
        }
        return std::pair{sum, err};
    });
    complex_value sum(0, 0);
    double err = 0;
    for (const auto& [v, e] : parts) {
        sum += v;
        err += e + eps * std::abs(sum);
    }
    return {sum, err};
}

}  // namespace detail

/// sum_{n <= N} chi(n) n^-s. Re(s) > 1 in general; for nonprincipal chi any
/// Re(s) > 0 is accepted, with the tail bounded by partial summation.
inline series_result dirichlet_series(const dirichlet_character& chi, complex_value s, std::int64_t N,
                                      const series_options& opts = {}) {
    if (N < 1) throw math_error(error_kind::invalid_argument, "N", "series length must be >= 1");
    const double sigma = s.real();
    const bool principal = chi.is_principal();
    if (!(sigma > 1) && (principal || !(sigma > 0)))
        throw math_error(error_kind::nonconvergent, "s",
                         principal ? "Dirichlet series needs Re(s) > 1 for a principal character"
                                   : "Dirichlet series needs Re(s) > 0 for a nonprincipal character");
    auto [sum, rounding] = detail::partial_sum(N, opts, [&](std::int64_t n) {
        if (chi.vanishes_at(n)) return std::pair{complex_value(0, 0), 0.0};
        const double ln = std::log(double(n));
        return std::pair{chi(n) * std::exp(-s * ln), (std::abs(s) * ln + 4) * detail::eps};
    });
    const double Nd = static_cast<double>(N);
    double tail = std::numeric_limits<double>::infinity();
    if (sigma > 1) tail = std::pow(Nd, 1 - sigma) / (sigma - 1);
    if (!principal) {
        tail = std::min(tail, detail::max_interval_sum(chi) * std::abs(s) / sigma * std::pow(Nd + 1, -sigma));
        if (s.imag() == 0 && detail::alternating_real(chi)) {
            std::int64_t next = N + 1;
            while (chi.vanishes_at(next)) ++next;
            tail = std::min(tail, std::pow(double(next), -sigma));
        }
    }
    return {sum, tail + rounding, N, "dirichlet_series"};
}

/// sum_{n <= N} a(n) n^-s for Re(s) > 1 + k/2. The tail uses |a(n)| <= d(n) n^((k-1)/2)
/// <= 2 n^(k/2), which holds for Hecke eigenforms.
inline series_result dirichlet_series(const coefficient_provider& f, complex_value s, std::int64_t N,
                                      const series_options& opts = {}) {
    if (N < 1) throw math_error(error_kind::invalid_argument, "N", "series length must be >= 1");
    const double sigma = s.real();
    const double half_k = f.weight() / 2.0;
    if (!(sigma > 1 + half_k))
        throw math_error(error_kind::nonconvergent, "s",
                         "modular Dirichlet series needs Re(s) > 1 + k/2 = " + std::to_string(1 + half_k));
    if (N > f.max_index())
        throw math_error(error_kind::out_of_range, "N",
                         "series length exceeds the coefficient range " + std::to_string(f.max_index()));
    auto [sum, rounding] = detail::partial_sum(N, opts, [&](std::int64_t n) {
        const double ln = std::log(double(n));
        return std::pair{f.coefficient(n) * std::exp(-s * ln), (std::abs(s) * ln + 4) * detail::eps};
    });
    const double tail = 2 * std::pow(double(N), half_k - sigma + 1) / (sigma - half_k - 1);
    return {sum, tail + rounding, N, "dirichlet_series_modular"};
}

}  // namespace padic_lfn
