#pragma once

#include "padic_lfn/dirichlet.hpp"
#include "padic_lfn/errors.hpp"
#include "padic_lfn/scalar.hpp"

#include <optional>
#include <string>

namespace padic_lfn {

enum class twist_kind { none, character, modular_a1, modular_a2 };

inline const char* to_string(twist_kind k) {
    switch (k) {
        case twist_kind::none: return "none";
        case twist_kind::character: return "character";
        case twist_kind::modular_a1: return "modular_a1";
        case twist_kind::modular_a2: return "modular_a2";
    }
    return "unknown";
}

/// The multiplicative datum inserted into gamma integrals and operator kernels:
/// nothing, an extended Dirichlet character, or an extended coefficient a_i(p)^n.
class twist {
public:
    static twist none(int p) { return twist(twist_kind::none, p, std::nullopt, complex_value(1, 0)); }

    static twist character(const dirichlet_character& chi, int p) {
        return twist(twist_kind::character, p, extended_character(chi, p), chi(p));
    }

    /// which = 1 or 2, selecting a_1(p) or a_2(p).
    static twist modular(int which, complex_value a_i, int p) {
        if (which != 1 && which != 2)
            throw math_error(error_kind::invalid_argument, "which", "modular twist index must be 1 or 2");
        return twist(which == 1 ? twist_kind::modular_a1 : twist_kind::modular_a2, p, std::nullopt, a_i);
    }

    twist_kind kind() const noexcept { return kind_; }
    int prime() const noexcept { return p_; }
    const std::optional<extended_character>& extended() const noexcept { return chi_; }

    /// chi(p) = 0 or a_i(p) = 0: the gamma function is 0 and the operator is the identity.
    bool degenerate() const noexcept { return base_ == complex_value(0, 0); }

    /// 1, chi(p) or a_i(p).
    complex_value base() const noexcept { return base_; }

    template <class Real>
    complex_of<Real> base_as() const {
        if (kind_ == twist_kind::character) return chi_->base().value_as<Real>(p_);
        return promote<Real>(base_);
    }

    /// Value of the extended twist at p^n.
    template <class Real = double>
    complex_of<Real> at_power(long long n) const {
        using C = complex_of<Real>;
        switch (kind_) {
            case twist_kind::none: return C(Real(1), Real(0));
            case twist_kind::character: return chi_->value_as<Real>(n);
            default:
                // Extended coefficient: zero everywhere when a_i(p) = 0.
                if (degenerate()) return C(Real(0), Real(0));
                return ipow(promote<Real>(base_), n);
        }
    }

    std::string describe() const {
        std::string s = to_string(kind_);
        if (kind_ == twist_kind::character) s += "(" + chi_->base().label() + ")";
        return s + "@p=" + std::to_string(p_);
    }

private:
    twist(twist_kind kind, int p, std::optional<extended_character> chi, complex_value base)
        : kind_(kind), p_(p), chi_(std::move(chi)), base_(base) {
        if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
    }

    twist_kind kind_;
    int p_;
    std::optional<extended_character> chi_;
    complex_value base_;
};

}  // namespace padic_lfn
