#pragma once

#include "padic_lfn/arith.hpp"
#include "padic_lfn/dirichlet.hpp"
#include "padic_lfn/errors.hpp"
#include "padic_lfn/scalar.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace padic_lfn {

namespace detail {

using big_poly = std::vector<big_int>;

/// a * b truncated to the first `len` coefficients.
inline big_poly mul_truncated(const big_poly& a, const big_poly& b, std::size_t len) {
    big_poly out(len);
    for (std::size_t i = 0; i < len && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const std::size_t lim = std::min(b.size(), len - i);
        for (std::size_t j = 0; j < lim; ++j) {
            if (b[j] != 0) out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace detail

/// tau(1..N) from q prod_{n>=1} (1 - q^n)^24, expanded exactly.
/// The product prod (1 - q^n) is accumulated factor by factor and then raised
/// to the 24th power with the chain P^2, P^4, P^8, P^16, P^16 * P^8.
inline std::vector<big_int> delta_expansion(int N) {
    if (N < 1) throw math_error(error_kind::invalid_argument, "N", "expansion length must be >= 1");
    const std::size_t len = static_cast<std::size_t>(N);  // degrees 0..N-1 of the eta product
    detail::big_poly prod(len, big_int(0));
    prod[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        for (std::size_t d = len - 1; d >= n; --d) {
            if (prod[d - n] != 0) prod[d] -= prod[d - n];
            if (d == n) break;
        }
    }
    auto p2 = detail::mul_truncated(prod, prod, len);
    auto p4 = detail::mul_truncated(p2, p2, len);
    auto p8 = detail::mul_truncated(p4, p4, len);
    auto p16 = detail::mul_truncated(p8, p8, len);
    auto p24 = detail::mul_truncated(p16, p8, len);
    return p24;  // tau(n) = p24[n - 1]
}

enum class coefficient_source { builtin_delta, explicit_table };

/// q-expansion coefficients a(n) of a normalised cusp form together with its
/// weight, level and nebentypus. Immutable after construction.
class coefficient_provider {
public:
    /// Delta: weight 12, level 1, trivial character, a(n) = tau(n) for n <= max_n.
    static coefficient_provider delta(int max_n) {
        coefficient_provider cp;
        cp.weight_ = 12;
        cp.level_ = 1;
        cp.nebentypus_ = trivial_character();
        cp.source_ = coefficient_source::builtin_delta;
        cp.table_ = std::make_shared<const table_t>(delta_expansion(max_n));
        return cp;
    }

    /// a(1..) given explicitly. Without a nebentypus the principal character mod
    /// level is used, so chi(p) = 0 for p | level.
    static coefficient_provider from_table(int weight, int level, std::vector<complex_value> a,
                                           std::optional<dirichlet_character> nebentypus = std::nullopt) {
        if (weight < 1) throw math_error(error_kind::invalid_argument, "weight", "weight must be positive");
        if (level < 1) throw math_error(error_kind::invalid_argument, "level", "level must be positive");
        if (a.empty() || std::abs(a.front() - complex_value(1, 0)) > 1e-12)
            throw math_error(error_kind::invalid_argument, "a", "coefficient table must start with a(1) = 1");
        if (nebentypus && nebentypus->modulus() != level)
            throw math_error(error_kind::invalid_argument, "nebentypus", "character modulus must equal the level");
        coefficient_provider cp;
        cp.weight_ = weight;
        cp.level_ = level;
        cp.nebentypus_ = nebentypus ? *nebentypus : character(level, 0);
        cp.source_ = coefficient_source::explicit_table;
        cp.table_ = std::make_shared<const table_t>(std::move(a));
        return cp;
    }

    int weight() const noexcept { return weight_; }
    int level() const noexcept { return level_; }
    coefficient_source source() const noexcept { return source_; }
    const dirichlet_character& nebentypus() const noexcept { return *nebentypus_; }

    int max_index() const noexcept {
        return static_cast<int>(std::visit([](const auto& v) { return v.size(); }, *table_));
    }

    std::optional<big_int> exact_coefficient(std::int64_t n) const {
        check_range(n);
        if (const auto* ints = std::get_if<std::vector<big_int>>(table_.get())) return (*ints)[static_cast<std::size_t>(n - 1)];
        return std::nullopt;
    }

    complex_value coefficient(std::int64_t n) const {
        check_range(n);
        if (const auto* ints = std::get_if<std::vector<big_int>>(table_.get()))
            return {static_cast<double>((*ints)[static_cast<std::size_t>(n - 1)]), 0.0};
        return std::get<std::vector<complex_value>>(*table_)[static_cast<std::size_t>(n - 1)];
    }

    /// chi(p) p^(k-1), the constant term of the local quadratic.
    complex_value hecke_constant(int p) const {
        return nebentypus()(p) * std::pow(static_cast<double>(p), weight_ - 1);
    }

    /// Exact chi(p) p^(k-1) when chi(p) is an integer (always for Delta).
    std::optional<big_int> exact_hecke_constant(int p) const {
        const complex_value c = nebentypus()(p);
        if (c.imag() != 0.0 || (c.real() != 1.0 && c.real() != -1.0 && c.real() != 0.0)) return std::nullopt;
        return big_int(static_cast<int>(c.real())) * boost::multiprecision::pow(big_int(p), weight_ - 1);
    }

private:
    using table_t = std::variant<std::vector<big_int>, std::vector<complex_value>>;

    coefficient_provider() = default;

    void check_range(std::int64_t n) const {
        if (n < 1 || n > max_index())
            throw math_error(error_kind::out_of_range, "n",
                             "coefficient index " + std::to_string(n) + " outside [1, " +
                                 std::to_string(max_index()) + "]");
    }

    int weight_ = 12;
    int level_ = 1;
    std::optional<dirichlet_character> nebentypus_;
    coefficient_source source_ = coefficient_source::builtin_delta;
    std::shared_ptr<const table_t> table_;
};

/// |a(p^(m+1)) - a(p) a(p^m) + chi(p) p^(k-1) a(p^(m-1))|, exact for integer tables.
inline double verify_recursion(const coefficient_provider& f, int p, int m) {
    if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
    if (m < 1) throw math_error(error_kind::invalid_argument, "m", "m must be >= 1");
    const std::int64_t pm = ipow_int(p, m);
    if (pm > f.max_index() / p)
        throw math_error(error_kind::out_of_range, "m", "p^(m+1) beyond the coefficient range");
    const std::int64_t up = pm * p, down = pm / p;
    if (auto c = f.exact_hecke_constant(p); c && f.exact_coefficient(1)) {
        const big_int r = *f.exact_coefficient(up) - *f.exact_coefficient(p) * *f.exact_coefficient(pm) +
                          *c * *f.exact_coefficient(down);
        return static_cast<double>(abs(r));
    }
    return std::abs(f.coefficient(up) - f.coefficient(p) * f.coefficient(pm) + f.hecke_constant(p) * f.coefficient(down));
}

/// Roots a_1, a_2 of x^2 - a(p) x + chi(p) p^(k-1).
struct local_factorization {
    int p = 2;
    complex_value a_p;
    complex_value hecke_constant;  // chi(p) p^(k-1)
    complex_value root1;
    complex_value root2;

    complex_value root(int i) const { return i == 1 ? root1 : root2; }

    /// Extended coefficient a_i(p^n): a_i^n, or 0 when a_i = 0.
    complex_value extended_root(int i, long long n) const {
        const complex_value r = root(i);
        if (r == complex_value(0, 0)) return 0.0;
        return ipow(r, n);
    }
};

/// Deterministic order: nonnegative imaginary part first, then larger real part.
inline local_factorization factorize_quadratic(int p, complex_value a_p, complex_value c) {
    const complex_value disc = a_p * a_p - 4.0 * c;
    complex_value sq = std::sqrt(disc);
    // Pick the sign avoiding cancellation, then recover the partner from the product.
    if ((std::conj(a_p) * sq).real() < 0) sq = -sq;
    complex_value r1 = (a_p + sq) / 2.0;
    complex_value r2 = r1 == complex_value(0, 0) ? complex_value(0, 0) : c / r1;
    if (r1 == complex_value(0, 0)) r2 = a_p - r1;
    auto key = [](complex_value z) { return std::pair{z.imag() >= 0 ? 1 : 0, z.real()}; };
    if (key(r2) > key(r1)) std::swap(r1, r2);
    return {p, a_p, c, r1, r2};
}

inline local_factorization factorize_local(const coefficient_provider& f, int p) {
    if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
    return factorize_quadratic(p, f.coefficient(p), f.hecke_constant(p));
}

/// sum_{n=0}^m a_1^(m-n) a_2^n via s_m = a(p) s_{m-1} - chi(p)p^(k-1) s_{m-2}.
inline complex_value symmetric_power_sum(const local_factorization& fac, int m) {
    if (m < 0) throw math_error(error_kind::invalid_argument, "m", "m must be >= 0");
    complex_value prev(0, 0), cur(1, 0);
    for (int i = 1; i <= m; ++i) {
        complex_value next = fac.a_p * cur - fac.hecke_constant * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// sum_{l=0}^{floor(m/2)} (-1)^l C(m-l, l) a^(m-2l) c^l.
inline complex_value binomial_side(complex_value a_p, complex_value c, int m) {
    if (m < 0) throw math_error(error_kind::invalid_argument, "m", "m must be >= 0");
    complex_value sum(0, 0);
    for (int l = 0; 2 * l <= m; ++l) {
        const double sign = (l % 2) ? -1.0 : 1.0;
        sum += sign * static_cast<double>(binomial(m - l, l)) * ipow(a_p, m - 2 * l) * ipow(c, l);
    }
    return sum;
}

}  // namespace padic_lfn
