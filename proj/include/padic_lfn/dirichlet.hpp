#pragma once

#include "padic_lfn/arith.hpp"
#include "padic_lfn/errors.hpp"
#include "padic_lfn/scalar.hpp"

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace padic_lfn {

/// (Z/kZ)^* as a product of cyclic factors, one per listed generator.
struct unit_group {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> generators;
    std::vector<std::int64_t> generator_orders;
    std::int64_t totient = 1;
};

namespace detail {

inline std::int64_t smallest_primitive_root(std::int64_t q, int e) {
    const std::int64_t m = ipow_int(q, e);
    const std::int64_t phi = m / q * (q - 1);
    for (std::int64_t g = 2; g < m; ++g) {
        if (std::gcd(g, m) == 1 && multiplicative_order(g, m) == phi) return g;
    }
    return 1;
}

}  // namespace detail

/// Generators are chosen deterministically: for each prime power of k in
/// ascending order, the smallest primitive root (or -1 and 5 for 2^e, e >= 3),
/// lifted by CRT to be 1 modulo the other prime powers.
inline unit_group make_unit_group(std::int64_t k) {
    if (k < 1) throw math_error(error_kind::invalid_argument, "k", "modulus must be >= 1");
    unit_group g;
    g.modulus = k;
    g.totient = totient(k);
    for (auto [q, e] : factorize(k)) {
        const std::int64_t qe = ipow_int(q, e);
        const std::int64_t rest = k / qe;
        auto lift = [&](std::int64_t local) { return rest == 1 ? local % qe : crt_pair(local % qe, qe, 1, rest); };
        std::vector<std::pair<std::int64_t, std::int64_t>> local;  // (generator mod q^e, order)
        if (q == 2) {
            if (e == 2) local.emplace_back(3, 2);
            if (e >= 3) {
                local.emplace_back(qe - 1, 2);
                local.emplace_back(5, qe / 4);
            }
        } else {
            local.emplace_back(detail::smallest_primitive_root(q, e), qe / q * (q - 1));
        }
        for (auto [gen, order] : local) {
            g.generators.push_back(lift(gen));
            g.generator_orders.push_back(order);
        }
    }
    return g;
}

/// Dirichlet character mod k, labelled by its exponent vector against the
/// generators of make_unit_group(k). Values are cached over one period.
class dirichlet_character {
public:
    dirichlet_character(std::shared_ptr<const unit_group> group, std::vector<std::int64_t> exponents)
        : group_(std::move(group)), exponents_(std::move(exponents)) {
        if (exponents_.size() != group_->generators.size())
            throw math_error(error_kind::invalid_argument, "exponents", "one exponent per generator required");
        exponent_ = 1;
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            const auto ord = group_->generator_orders[i];
            exponents_[i] = ((exponents_[i] % ord) + ord) % ord;
            exponent_ = std::lcm(exponent_, ord);
        }
        build_table();
    }

    std::int64_t modulus() const noexcept { return group_->modulus; }
    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
    const unit_group& group() const noexcept { return *group_; }

    /// Position in enumerate_characters(k): mixed radix, first generator fastest.
    std::int64_t index() const noexcept {
        std::int64_t idx = 0, radix = 1;
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            idx += exponents_[i] * radix;
            radix *= group_->generator_orders[i];
        }
        return idx;
    }

    bool is_principal() const noexcept {
        for (auto e : exponents_)
            if (e != 0) return false;
        return true;
    }

    bool is_real() const noexcept {
        for (std::size_t i = 0; i < exponents_.size(); ++i)
            if ((2 * exponents_[i]) % group_->generator_orders[i] != 0) return false;
        return true;
    }

    bool vanishes_at(std::int64_t m) const noexcept { return angle_[reduce(m)] < 0; }

    /// Value as exp(2 pi i t / L) with L the group exponent; t < 0 means chi(m) = 0.
    std::int64_t angle(std::int64_t m) const noexcept { return angle_[reduce(m)]; }
    std::int64_t angle_denominator() const noexcept { return exponent_; }

    complex_value operator()(std::int64_t m) const noexcept { return values_[reduce(m)]; }

    template <class Real>
    complex_of<Real> value_as(std::int64_t m) const {
        const auto t = angle(m);
        if (t < 0) return complex_of<Real>(Real(0), Real(0));
        return root_of_unity<Real>(t, exponent_);
    }

    dirichlet_character conjugate() const {
        std::vector<std::int64_t> neg(exponents_.size());
        for (std::size_t i = 0; i < exponents_.size(); ++i) neg[i] = -exponents_[i];
        return dirichlet_character(group_, std::move(neg));
    }

    std::string label() const { return std::to_string(modulus()) + ":" + std::to_string(index()); }

    friend bool operator==(const dirichlet_character& a, const dirichlet_character& b) {
        return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
    }

private:
    std::size_t reduce(std::int64_t m) const noexcept {
        const auto k = group_->modulus;
        return static_cast<std::size_t>(((m % k) + k) % k);
    }

    void build_table() {
        const auto k = group_->modulus;
        angle_.assign(static_cast<std::size_t>(k), -1);
        values_.assign(static_cast<std::size_t>(k), complex_value(0, 0));
        if (k == 1) {
            // The trivial character is 1 on every integer, including 0.
            angle_[0] = 0;
            values_[0] = 1;
            return;
        }
        // Walk every exponent combination c: element prod g_i^c_i gets angle sum e_i c_i L/ord_i.
        const auto& gens = group_->generators;
        const auto& ords = group_->generator_orders;
        std::vector<std::int64_t> c(gens.size(), 0);
        for (std::int64_t n = 0; n < group_->totient; ++n) {
            std::int64_t element = 1 % k, t = 0;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                element = static_cast<std::int64_t>(static_cast<__int128>(element) * mod_pow(gens[i], c[i], k) % k);
                t += exponents_[i] * c[i] * (exponent_ / ords[i]);
            }
            t %= exponent_;
            angle_[static_cast<std::size_t>(element)] = t;
            values_[static_cast<std::size_t>(element)] = root_of_unity<double>(t, exponent_);
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (++c[i] < ords[i]) break;
                c[i] = 0;
            }
        }
    }

    std::shared_ptr<const unit_group> group_;
    std::vector<std::int64_t> exponents_;
    std::int64_t exponent_ = 1;
    std::vector<std::int64_t> angle_;
    std::vector<complex_value> values_;
};

/// All phi(k) characters mod k; index 0 is the principal character.
inline std::vector<dirichlet_character> enumerate_characters(std::int64_t k) {
    auto group = std::make_shared<const unit_group>(make_unit_group(k));
    std::vector<dirichlet_character> out;
    out.reserve(static_cast<std::size_t>(group->totient));
    std::vector<std::int64_t> e(group->generators.size(), 0);
    for (std::int64_t n = 0; n < group->totient; ++n) {
        out.emplace_back(group, e);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (++e[i] < group->generator_orders[i]) break;
            e[i] = 0;
        }
    }
    return out;
}

inline dirichlet_character character(std::int64_t k, std::int64_t index) {
    auto all = enumerate_characters(k);
    if (index < 0 || index >= static_cast<std::int64_t>(all.size()))
        throw math_error(error_kind::invalid_argument, "chi",
                         "character index " + std::to_string(index) + " outside [0, " + std::to_string(all.size()) +
                             ") for modulus " + std::to_string(k));
    return all[static_cast<std::size_t>(index)];
}

inline dirichlet_character trivial_character() { return character(1, 0); }

/// Extension of chi from p^N to p^Z: chi(p)^n, zero for n != 0 when chi(p) = 0.
class extended_character {
public:
    extended_character(dirichlet_character chi, int p) : chi_(std::move(chi)), p_(p) {
        if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
    }

    const dirichlet_character& base() const noexcept { return chi_; }
    int prime() const noexcept { return p_; }
    bool p_divides_k() const noexcept { return chi_.vanishes_at(p_); }

    /// Value at p^n.
    complex_value operator()(long long n) const { return value_as<double>(n); }

    template <class Real>
    complex_of<Real> value_as(long long n) const {
        using C = complex_of<Real>;
        if (n == 0) return C(Real(1), Real(0));
        if (p_divides_k()) return C(Real(0), Real(0));
        const C base = chi_.value_as<Real>(p_);
        return ipow(base, n);
    }

    /// conj(chi(p^|n|)) for n < 0: the unimodular form of the negative branch.
    complex_value conjugate_branch(long long n) const {
        if (n >= 0 || p_divides_k()) return (*this)(n);
        return std::conj(ipow(chi_(p_), -n));
    }

private:
    dirichlet_character chi_;
    int p_;
};

}  // namespace padic_lfn
