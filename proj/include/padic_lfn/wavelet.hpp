#pragma once

#include "padic_lfn/errors.hpp"
#include "padic_lfn/padic.hpp"
#include "padic_lfn/quadrature.hpp"
#include "padic_lfn/scalar.hpp"
#include "padic_lfn/twist.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace padic_lfn {

/// Label (n, m, j) of the wavelet p^(-n/2) e^{2 pi i j p^(n-1) xi} Omega(p^n xi - m).
/// The translation m in Q_p/Z_p is stored as m_num / p^m_exp in lowest terms.
class wavelet_index {
public:
    static wavelet_index make(int p, int n, std::int64_t m_num = 0, int m_exp = 0, int j = 1) {
        if (!is_prime(p)) throw math_error(error_kind::invalid_argument, "p", std::to_string(p) + " is not prime");
        if (j < 1 || j >= p) throw math_error(error_kind::invalid_argument, "j", "j must lie in [1, p-1]");
        if (m_exp < 0) throw math_error(error_kind::invalid_argument, "m", "m exponent must be >= 0");
        if (m_num == 0) m_exp = 0;
        while (m_exp > 0 && m_num % p == 0) {
            m_num /= p;
            --m_exp;
        }
        const std::int64_t den = ipow_int(p, m_exp);
        m_num %= den;
        if (m_num < 0) m_num += den;
        if (m_num == 0) m_exp = 0;
        return wavelet_index(p, n, m_num, m_exp, j);
    }

    /// psi_{1 - label, 0, 1}: the ket |label>.
    static wavelet_index from_ket(int p, long long label) { return make(p, static_cast<int>(1 - label)); }

    int prime() const noexcept { return p_; }
    int scale() const noexcept { return n_; }
    std::int64_t translation_numerator() const noexcept { return m_num_; }
    int translation_exponent() const noexcept { return m_exp_; }
    int phase() const noexcept { return j_; }
    long long ket_label() const noexcept { return 1 - n_; }

    /// The translation m as an element of Q_p.
    padic_number translation() const {
        return padic_number::from_integer(p_, m_num_).shifted(-m_exp_);
    }

    /// Support {|p^n xi - m|_p <= 1} = ball of radius p^n around m p^(-n).
    padic_ball support() const { return {translation().shifted(-n_), n_}; }

    friend bool operator==(const wavelet_index&, const wavelet_index&) = default;

private:
    wavelet_index(int p, int n, std::int64_t m_num, int m_exp, int j)
        : p_(p), n_(n), m_num_(m_num), m_exp_(m_exp), j_(j) {}

    int p_;
    int n_;
    std::int64_t m_num_;
    int m_exp_;
    int j_;
};

/// Omega(x): 1 iff |x|_p <= 1.
inline int indicator(const padic_number& x) { return (x.is_zero() || x.valuation() >= 0) ? 1 : 0; }

template <class Real = double>
complex_of<Real> wavelet_eval(const wavelet_index& idx, const padic_number& xi) {
    using C = complex_of<Real>;
    if (xi.prime() != idx.prime())
        throw math_error(error_kind::invalid_argument, "xi", "point and wavelet use different primes");
    const int p = idx.prime();
    const int n = idx.scale();
    if (!indicator(xi.shifted(n) - idx.translation())) return C(Real(0), Real(0));
    const auto phase_arg = (padic_number::from_integer(p, idx.phase()) * xi).shifted(n - 1);
    using std::exp;
    using std::log;
    const Real amplitude = exp(-Real(n) / 2 * log(Real(p)));
    return additive_character<Real>(phase_arg) * C(amplitude, Real(0));
}

enum class shift_direction { raise, lower };
enum class subspace { full, h_minus };

/// a_+ psi_n = psi_{n+1}, a_- psi_n = psi_{n-1} on the family psi_{n,0,1}.
/// Within H_- (labels >= 0) raising the ground state |0> gives the zero vector (nullopt).
inline std::optional<wavelet_index> raise_lower(const wavelet_index& idx, shift_direction dir,
                                                subspace space = subspace::h_minus) {
    if (idx.translation_numerator() != 0 || idx.phase() != 1)
        throw math_error(error_kind::invalid_argument, "idx", "raising/lowering acts on psi_{n,0,1} only");
    const int n = idx.scale() + (dir == shift_direction::raise ? 1 : -1);
    if (space == subspace::h_minus && 1 - n < 0) return std::nullopt;
    return wavelet_index::make(idx.prime(), n);
}

/// Basis ket |label> of H_- with the ladder action on labels.
struct ket {
    long long label = 0;
    friend bool operator==(const ket&, const ket&) = default;
};

inline std::optional<ket> raise(ket k) {
    if (k.label <= 0) return std::nullopt;
    return ket{k.label - 1};
}

inline ket lower(ket k) { return ket{k.label + 1}; }

/// Which pseudodifferential operator (plain, character twisted, modular a_i) and its exponent.
struct operator_spec {
    twist datum;
    complex_value alpha;

    static operator_spec plain(int p, complex_value alpha) { return {twist::none(p), alpha}; }
    static operator_spec character_twisted(const dirichlet_character& chi, int p, complex_value alpha) {
        return {twist::character(chi, p), alpha};
    }
    static operator_spec modular(int which, complex_value a_i, int p, complex_value alpha) {
        return {twist::modular(which, a_i, p), alpha};
    }

    int prime() const noexcept { return datum.prime(); }
    /// Degenerate twists make the operator the identity.
    bool identity() const noexcept { return datum.degenerate(); }
};

/// t p^alpha, the one-step eigenvalue ratio; shared by traces and closed forms.
template <class Real = double>
complex_of<Real> eigen_base(const operator_spec& op) {
    return op.datum.base_as<Real>() * prime_power<Real>(op.prime(), promote<Real>(op.alpha));
}

/// Eigenvalue of the operator on ket |label>: (t p^alpha)^label; 1 for the identity convention.
template <class Real = double>
complex_of<Real> eigenvalue(const operator_spec& op, long long label) {
    using C = complex_of<Real>;
    if (op.identity()) return C(Real(1), Real(0));
    if (op.datum.kind() == twist_kind::none) {
        return prime_power<Real>(op.prime(), promote<Real>(op.alpha) * C(Real(label), Real(0)));
    }
    return ipow(eigen_base<Real>(op), label);
}

template <class Real>
struct kernel_result {
    complex_of<Real> value;
    Real tail_bound;
    std::size_t cosets = 0;
    int shells = 0;
};

struct kernel_options {
    int refinement = 0;
    std::size_t coset_cap = default_coset_cap;
};

/// Kernel form of the operator applied to a wavelet g at xi:
///   (1/Gamma_t(-alpha)) int_{|xi'| <= p^R} (g(xi') - g(xi)) |xi' - xi|^(-alpha-1) t(|xi' - xi|^-1) dxi'.
///
/// g is constant on cosets of p^(1-n) Z_p, so the g(xi') part is an exact sum
/// over the cosets of the support (refined by `refinement` extra digits), and the
/// g(xi) part is summed shell by shell |xi' - xi| = p^(-v) for v in [-R, level).
/// Inside xi's own coset the integrand vanishes identically. The shells beyond
/// p^R are bounded in closed form and returned as tail_bound.
template <class Real = double>
kernel_result<Real> apply_kernel(const operator_spec& op, const wavelet_index& idx, const padic_number& xi, int R,
                                 const kernel_options& opts = {}) {
    using C = complex_of<Real>;
    using std::abs;
    using std::exp;
    using std::log;
    using std::pow;
    using std::real;

    const int p = op.prime();
    if (idx.prime() != p || xi.prime() != p)
        throw math_error(error_kind::invalid_argument, "p", "operator, wavelet and point must share the prime");

    const C g_xi = wavelet_eval<Real>(idx, xi);
    if (op.identity()) return {g_xi, Real(0), 0, 0};

    const Real log_p = log(Real(p));
    const C alpha = promote<Real>(op.alpha);
    const C t = op.datum.base_as<Real>();
    const Real q = abs(C(Real(1), Real(0)) / t) * exp(-real(alpha) * log_p);
    if (!(q < Real(1)))
        throw math_error(error_kind::nonconvergent, "alpha",
                         "outer kernel tail needs |t|^-1 p^(-Re alpha) < 1 (Re(alpha) > 0 for characters)");

    const padic_ball supp = idx.support();
    const int support_exp = supp.radius_exponent;
    const int center_exp = supp.center.is_zero() ? INT_MIN : -supp.center.valuation();
    const int xi_exp = xi.is_zero() ? INT_MIN : -xi.valuation();
    if (R < support_exp || R < center_exp || R < xi_exp)
        throw math_error(error_kind::invalid_argument, "R",
                         "integration ball p^R must contain the point and the wavelet support");

    const int level = 1 - idx.scale() + opts.refinement;
    const C one(Real(1), Real(0));
    // |z|^(-alpha-1) t(|z|^-1) on the shell |z| = p^(-v).
    auto weight = [&](int v) {
        return exp((alpha + one) * C(Real(v) * log_p, Real(0))) * ipow(t, static_cast<long long>(v));
    };

    const auto reps = coset_representatives(supp, level, opts.coset_cap);
    C moving(Real(0), Real(0));
    for (const auto& r : reps) {
        const padic_number z = r - xi;
        if (z.is_zero() || z.valuation() >= level) continue;
        moving += wavelet_eval<Real>(idx, r) * weight(z.valuation());
    }
    moving *= C(exp(-Real(level) * log_p), Real(0));

    C fixed(Real(0), Real(0));
    int shells = 0;
    if (indicator(xi.shifted(idx.scale()) - idx.translation())) {
        const Real ring = Real(1) - Real(1) / Real(p);
        for (int v = -R; v < level; ++v, ++shells)
            fixed += weight(v) * C(ring * exp(-Real(v) * log_p), Real(0));
    }

    const C gamma = twisted_gamma<Real>(p, t, -alpha);
    kernel_result<Real> out;
    out.value = (moving - g_xi * fixed) / gamma;
    out.tail_bound = abs(g_xi) * (Real(1) - Real(1) / Real(p)) * pow(q, R + 1) / (Real(1) - q) / abs(gamma);
    out.cosets = reps.size();
    out.shells = shells;
    return out;
}

/// L^2 pairing <psi_1, psi_2> = int_{|xi| <= p^R} psi_1 conj(psi_2), summed exactly over cosets.
inline complex_value inner_product(const wavelet_index& a, const wavelet_index& b, int R,
                                   std::size_t cap = default_coset_cap) {
    if (a.prime() != b.prime()) throw math_error(error_kind::invalid_argument, "p", "wavelets use different primes");
    const int p = a.prime();
    const int level = std::max(1 - a.scale(), 1 - b.scale());
    const padic_ball ball{padic_number::zero(p), R};
    const auto reps = coset_representatives(ball, level, cap);
    complex_value sum(0, 0);
    for (const auto& r : reps) sum += wavelet_eval(a, r) * std::conj(wavelet_eval(b, r));
    return sum * std::pow(static_cast<double>(p), -level);
}

}  // namespace padic_lfn
