#include "padic_lfn/modular.hpp"
#include "padic_lfn/quadrature.hpp"

#include <gtest/gtest.h>

using namespace padic_lfn;

namespace {

// Oracle: the defining integral summed by brute force over a finite window of
// circles, with every circle refined to a fixed depth independent of the
// integrand's declared locality.
complex_value brute_force_gamma(int p, complex_value t, complex_value s, int inner, int outer, int depth) {
    complex_value total(0, 0);
    for (int n = -outer; n <= inner; ++n) {
        const auto reps = circle_representatives(p, n, depth);
        const double cell = std::pow(double(p), -(n + depth));
        for (const auto& x : reps) {
            const int v = x.valuation();
            total += additive_character(x) * std::pow(complex_value(p, 0), -double(v) * (s - 1.0)) *
                     std::pow(t, v) * cell;
        }
    }
    return total;
}

}  // namespace

TEST(IntegrateCircle, ConstantIntegrand) {
    for (int p : {2, 3, 5})
        for (int n : {-2, 0, 2}) {
            const auto got = integrate_circle({[](const padic_number&) { return complex_value(1, 0); }, n + 1}, p, n);
            EXPECT_NEAR(std::abs(got - to_double(circle_measure(p, n))), 0.0, 1e-14);
        }
}

TEST(IntegrateCircle, AdditiveCharacterOnOuterCircles) {
    auto chi = [](const padic_number& x) { return additive_character(x); };
    for (int p : {2, 3, 5, 7}) {
        EXPECT_NEAR(std::abs(integrate_circle({chi, 0}, p, -1) + 1.0), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(integrate_circle({chi, 0}, p, -2)), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(integrate_circle({chi, 0}, p, -3)), 0.0, 1e-12);
    }
}

TEST(IntegrateCircle, DetectsWrongLocality) {
    // e^{2 pi i x / p^2} on the unit circle is only constant on cosets of p^2 Z_p; claim Z_p.
    auto chi = [](const padic_number& x) { return additive_character(x.shifted(-2)); };
    EXPECT_THROW(integrate_circle({chi, 0}, 5, 0), math_error);
}

TEST(GammaClosedForm, Examples) {
    EXPECT_NEAR(std::abs(gamma_closed_form(gamma_spec::standard(2, 2.0)) - (-4.0 / 3.0)), 0.0, 1e-15);
    for (int p : {2, 3, 5})
        for (complex_value s : {complex_value(0.3, 0), complex_value(2, 1)})
            EXPECT_NEAR(std::abs(gamma_closed_form(gamma_spec::character_twisted(trivial_character(), p, s)) -
                                 gamma_closed_form(gamma_spec::standard(p, s))),
                        0.0, 1e-14);
    EXPECT_EQ(gamma_closed_form(gamma_spec::character_twisted(character(6, 1), 3, 0.7)), complex_value(0, 0));
    EXPECT_EQ(gamma_closed_form(gamma_spec::modular(1, 0.0, 3, 0.7)), complex_value(0, 0));
}

TEST(GammaClosedForm, PoleIsReported) {
    try {
        gamma_closed_form(gamma_spec::standard(3, 0.0));
        FAIL() << "expected a pole error";
    } catch (const math_error& e) {
        EXPECT_EQ(e.kind(), error_kind::pole);
        EXPECT_EQ(e.parameter(), "s");
    }
}

TEST(GammaQuadrature, Examples) {
    const auto a = gamma_by_quadrature(gamma_spec::character_twisted(trivial_character(), 2, 2.0), 40);
    EXPECT_NEAR(std::abs(a.value - (-4.0 / 3.0)), 0.0, 1e-10);

    const auto spec = gamma_spec::character_twisted(character(4, 1), 3, 0.5);
    const auto b = gamma_by_quadrature(spec, 60);
    EXPECT_NEAR(std::abs(b.value - gamma_closed_form(spec)), 0.0, 1e-9);

    for (int p : {2, 3, 5})
        for (const auto& chi : enumerate_characters(8)) {
            if (8 % p == 0) continue;
            const complex_value s(0.6, 2.0);
            const auto r = gamma_by_quadrature(gamma_spec::character_twisted(chi, p, s), 0);
            const complex_value want = (p - 1.0) / double(p) - std::pow(complex_value(p, 0), s - 1.0) / chi(p);
            EXPECT_NEAR(std::abs(r.value - want), 0.0, 1e-13);
        }
}

TEST(GammaQuadrature, MatchesBruteForceWindow) {
    // Inner circles beyond the window are a tiny geometric tail at Re(s) = 3.
    for (int p : {2, 3})
        for (const auto& chi : enumerate_characters(5)) {
            const complex_value s(3, 0.4);
            const auto q = gamma_by_quadrature(gamma_spec::character_twisted(chi, p, s), 12);
            const auto bf = brute_force_gamma(p, chi(p), s, 12, 2, 3);
            EXPECT_NEAR(std::abs(q.value - bf), 0.0, 1e-12);
        }
}

TEST(GammaQuadrature, RegionsAddUp) {
    const auto r = gamma_by_quadrature(gamma_spec::character_twisted(character(5, 2), 7, {0.9, -1}), 30);
    EXPECT_EQ(r.value, r.inner + r.unit + r.outer);
    // More outer circles add nothing: only |xi| = p contributes.
    gamma_quadrature_options more;
    more.outer_circles = 4;
    const auto r4 = gamma_by_quadrature(gamma_spec::character_twisted(character(5, 2), 7, {0.9, -1}), 30, more);
    EXPECT_NEAR(std::abs(r4.value - r.value), 0.0, 1e-13);
}

TEST(GammaQuadrature, OracleGridWithinBound) {
    for (int p : {2, 3, 5, 7})
        for (int k : {1, 3, 4, 5, 8}) {
            if (k % p == 0) continue;
            for (const auto& chi : enumerate_characters(k))
                for (complex_value s : {complex_value(0.3, 0), complex_value(0.5, 14.1), complex_value(0.9, 0),
                                        complex_value(2, 0)}) {
                    const auto spec = gamma_spec::character_twisted(chi, p, s);
                    const auto q = gamma_by_quadrature(spec, 64);
                    EXPECT_LE(std::abs(q.value - gamma_closed_form(spec)), q.remainder_bound + 1e-10);
                }
        }
}

TEST(GammaQuadrature, ModularTwist) {
    const auto f = coefficient_provider::delta(8);
    const auto fac = factorize_local(f, 2);
    // Convergence needs |a_i| 2^-Re(s) < 1, i.e. Re(s) > 5.5.
    const auto spec = gamma_spec::modular(1, fac.root1, 2, {7.5, 0.2});
    const auto q = gamma_by_quadrature(spec, 64);
    const auto closed = gamma_closed_form(spec);
    EXPECT_LE(std::abs(q.value - closed), q.remainder_bound + 1e-10 * std::abs(closed));
    EXPECT_THROW(gamma_by_quadrature(gamma_spec::modular(1, fac.root1, 2, 2.0), 64), math_error);
}

TEST(GammaQuadrature, Degenerate) {
    const auto r = gamma_by_quadrature(gamma_spec::character_twisted(character(4, 1), 2, 0.5), 64);
    EXPECT_EQ(r.value, complex_value(0, 0));
    EXPECT_EQ(r.remainder_bound, 0.0);
}

TEST(GammaQuadrature, Nonconvergent) {
    try {
        gamma_by_quadrature(gamma_spec::standard(3, {-0.5, 0}), 10);
        FAIL();
    } catch (const math_error& e) {
        EXPECT_EQ(e.kind(), error_kind::nonconvergent);
    }
}

TEST(GammaClosedForm, Reflection) {
    for (int p : {2, 3, 5, 7})
        for (int k : {1, 3, 4, 5, 8}) {
            if (k % p == 0) continue;
            for (const auto& chi : enumerate_characters(k))
                for (complex_value s : {complex_value(0.3, 0), complex_value(0.5, 14.1), complex_value(2, 0)}) {
                    const auto a = gamma_closed_form(gamma_spec::character_twisted(chi, p, s));
                    const auto b = gamma_closed_form(gamma_spec::character_twisted(chi.conjugate(), p, 1.0 - s));
                    EXPECT_NEAR(std::abs(a * b - 1.0), 0.0, 1e-10);
                }
        }
}
