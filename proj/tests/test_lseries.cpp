#include "padic_lfn/lseries.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace padic_lfn;

namespace {

const coefficient_provider& delta() {
    static const auto f = coefficient_provider::delta(4096);
    return f;
}

// Oracle for a local factor: 1/prod(1 - a_i x) with the roots found independently
// from the quadratic formula, no cancellation control.
complex_value product_of_geometric(complex_value a_p, complex_value c, complex_value x) {
    const complex_value d = std::sqrt(a_p * a_p - 4.0 * c);
    return 1.0 / ((1.0 - (a_p + d) / 2.0 * x) * (1.0 - (a_p - d) / 2.0 * x));
}

}  // namespace

TEST(LocalTrace, Examples) {
    const auto z = local_trace(trace_request::zeta(2, 1.0, 60));
    EXPECT_NEAR(std::abs(z.value - 2.0), 0.0, 1e-15);
    EXPECT_EQ(z.method, "trace:plain");

    const auto d = local_trace(trace_request::dirichlet(character(4, 1), 3, 1.0, 60));
    EXPECT_NEAR(std::abs(d.value - 0.75), 0.0, 1e-15);

    const auto m = local_trace(trace_request::modular(delta(), 2, 8.0, 64));
    const double want = 1.0 / (1.0 + 24.0 / 256.0 + std::pow(2.0, 11 - 16));
    EXPECT_NEAR(std::abs(m.value - want), 0.0, 1e-10);
    EXPECT_LE(std::abs(m.value - want), m.remainder_bound);
    EXPECT_EQ(m.terms_used, 65 * 66 / 2);
}

TEST(LocalFactorClosed, Examples) {
    EXPECT_NEAR(std::abs(local_factor_closed(trace_request::dirichlet(trivial_character(), 2, 2.0)) - 4.0 / 3.0), 0.0,
                1e-15);
    EXPECT_EQ(local_factor_closed(trace_request::dirichlet(character(6, 1), 3, 2.0)), complex_value(1, 0));
    const auto req = trace_request::modular(delta(), 2, 8.0);
    EXPECT_NEAR(std::abs(local_factor_closed(req) - product_of_geometric(-24.0, 2048.0, std::pow(2.0, -8.0))), 0.0,
                1e-14);
    try {
        local_factor_closed(trace_request::zeta(3, 0.0));
        FAIL();
    } catch (const math_error& e) {
        EXPECT_EQ(e.kind(), error_kind::pole);
    }
}

TEST(LocalTrace, OracleGrid) {
    for (int p : {2, 3, 5, 7}) {
        for (complex_value s : {complex_value(1, 0), complex_value(2, 0)}) {
            const auto r = local_trace(trace_request::zeta(p, s));
            EXPECT_LE(std::abs(r.value - local_factor_closed(trace_request::zeta(p, s))), r.remainder_bound);
        }
        for (int k = 1; k <= 8; ++k) {
            if (k % p == 0) continue;
            for (const auto& chi : enumerate_characters(k))
                for (complex_value s : {complex_value(1, 0), complex_value(2, 0), complex_value(0.5, 3)}) {
                    const auto req = trace_request::dirichlet(chi, p, s);
                    const auto r = local_trace(req);
                    EXPECT_LE(std::abs(r.value - local_factor_closed(req)), r.remainder_bound)
                        << "p=" << p << " chi=" << chi.label();
                }
        }
    }
    for (int p : {2, 3, 5, 7})
        for (double s : {7.0, 8.0}) {
            const auto req = trace_request::modular(delta(), p, s);
            const auto r = local_trace(req);
            EXPECT_LE(std::abs(r.value - local_factor_closed(req)), r.remainder_bound) << "p=" << p << " s=" << s;
            EXPECT_LE(r.remainder_bound, 1e-8);
        }
}

TEST(LocalTrace, DegreeCoefficientsAreSymmetricPowerSums) {
    // Differences of consecutive truncations isolate the total-degree-m term.
    for (int p : {2, 3, 5}) {
        const complex_value s(7.5, 0.3);
        const complex_value x = prime_power(p, -s);
        const auto fac = factorize_local(delta(), p);
        complex_value prev(0, 0);
        for (int M = 0; M <= 32; ++M) {
            const complex_value cur = local_trace(trace_request::modular(delta(), p, s, M)).value;
            const complex_value term = cur - prev;
            const complex_value want = symmetric_power_sum(fac, M) * ipow(x, M);
            EXPECT_LE(std::abs(term - want), 1e-8 * std::abs(want) + 1e-15) << "p=" << p << " m=" << M;
            prev = cur;
        }
    }
}

TEST(LocalTrace, MonotoneInTruncation) {
    for (int M = 1; M < 80; ++M) {
        EXPECT_GE(local_trace(trace_request::zeta(3, 0.7, M)).remainder_bound,
                  local_trace(trace_request::zeta(3, 0.7, M + 1)).remainder_bound);
        EXPECT_GE(local_trace(trace_request::modular(delta(), 2, 7.0, M)).remainder_bound,
                  local_trace(trace_request::modular(delta(), 2, 7.0, M + 1)).remainder_bound);
    }
}

TEST(LocalTrace, Errors) {
    auto kind_of = [](auto&& fn) -> std::optional<error_kind> {
        try {
            fn();
        } catch (const math_error& e) {
            return e.kind();
        }
        return std::nullopt;
    };
    EXPECT_EQ(kind_of([] { local_trace(trace_request::dirichlet(character(4, 1), 2, 1.0)); }),
              error_kind::degenerate_twist);
    EXPECT_EQ(kind_of([] { local_trace(trace_request::zeta(2, -0.1)); }), error_kind::nonconvergent);
    EXPECT_EQ(kind_of([] { local_trace(trace_request::modular(delta(), 2, 5.0)); }), error_kind::nonconvergent);
    EXPECT_EQ(kind_of([] { local_trace(trace_request::zeta(4, 1.0)); }), error_kind::invalid_argument);
    // A table with a(p) = 0 and chi(p) = 0 has both roots zero.
    const auto f = coefficient_provider::from_table(2, 11, {1.0, -2.0, -1.0, 2.0, 1.0, 2.0, -2.0, 0.0, -2.0, -2.0, 0.0});
    EXPECT_EQ(kind_of([&] { local_trace(trace_request::modular(f, 11, 3.0)); }), error_kind::degenerate_twist);
}

TEST(HeckeTrace, ZeroShiftIsTheLocalTrace) {
    for (int p : {2, 3}) {
        const auto a = hecke_conjugated_trace(delta(), p, 8.0, 0, 40);
        const auto b = local_trace(trace_request::modular(delta(), p, 8.0, 40));
        EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-15);
    }
}

TEST(HeckeTrace, ShiftMultipliesByPrimePowerCoefficient) {
    for (int p : {2, 3})
        for (int ell = 0; ell <= 4; ++ell) {
            const complex_value s = 8.0;
            const auto h = hecke_conjugated_trace(delta(), p, s, ell);
            const double a = static_cast<double>(*delta().exact_coefficient(ipow_int(p, ell)));
            const complex_value want = a * prime_power(p, -s * double(ell)) *
                                       local_factor_closed(trace_request::modular(delta(), p, s));
            EXPECT_LE(std::abs(h.value - want), h.remainder_bound + 1e-15 * std::abs(want))
                << "p=" << p << " l=" << ell;
        }
    // tau(9) from the expansion.
    EXPECT_EQ(*delta().exact_coefficient(9), big_int(-113643));
}

TEST(HeckeTrace, LatticeRegionDropsLowDegrees) {
    for (int ell = 0; ell <= 4; ++ell) {
        const complex_value s(7.2, 1.0);
        const auto region = lattice_region_sum(delta(), 2, s, ell);
        const complex_value x = prime_power(2, -s);
        complex_value head(0, 0);
        for (int m = 0; m < ell; ++m) head += static_cast<double>(*delta().exact_coefficient(ipow_int(2, m))) * ipow(x, m);
        const complex_value want = local_factor_closed(trace_request::modular(delta(), 2, s)) - head;
        EXPECT_LE(std::abs(region.value - want), region.remainder_bound) << ell;
    }
}

TEST(HeckeTrace, DirichletShift) {
    const auto chi = character(5, 1);
    const complex_value s(1.5, 0.5);
    for (int ell = 0; ell < 4; ++ell) {
        const auto h = hecke_conjugated_trace(chi, 3, s, ell);
        const complex_value want =
            ipow(chi(3) * prime_power(3, -s), ell) * local_factor_closed(trace_request::dirichlet(chi, 3, s));
        EXPECT_LE(std::abs(h.value - want), h.remainder_bound);
    }
    EXPECT_THROW(hecke_conjugated_trace(delta(), 2, 8.0, 5, 4), math_error);
}

TEST(EulerProduct, Examples) {
    const auto z = euler_product(trivial_character(), 2.0, 100000);
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
    EXPECT_NEAR(z.value.real(), pi2_6, 1e-5);
    EXPECT_LE(std::abs(z.value - pi2_6), z.remainder_bound);

    const auto one = euler_product(character(4, 1), {2.5, 1}, 2);
    EXPECT_EQ(one.terms_used, 1);
    EXPECT_EQ(one.value, complex_value(1, 0));  // chi(2) = 0
    const auto two = euler_product(trivial_character(), 3.0, 2);
    EXPECT_NEAR(std::abs(two.value - 8.0 / 7.0), 0.0, 1e-15);

    EXPECT_THROW(euler_product(trivial_character(), 1.0, 100), math_error);
}

TEST(EulerProduct, MonotoneInPrimeBound) {
    double last = std::numeric_limits<double>::infinity();
    for (std::int64_t P : {2, 10, 100, 1000, 10000, 100000}) {
        const auto r = euler_product(character(5, 2), 1.5, P);
        EXPECT_LE(r.remainder_bound, last);
        last = r.remainder_bound;
    }
}

TEST(EulerProduct, ModularAgreesWithSeries) {
    const complex_value s(8.0, 0.5);
    const auto e = euler_product(delta(), s, 4000);
    const auto d = dirichlet_series(delta(), s, 4000);
    EXPECT_LE(std::abs(e.value - d.value), e.remainder_bound + d.remainder_bound);
    EXPECT_THROW(euler_product(delta(), 6.5, 100), math_error);
    EXPECT_THROW(euler_product(delta(), 8.0, 5000), math_error);
}

TEST(DirichletSeries, Examples) {
    const double pi = std::numbers::pi;
    const auto z = dirichlet_series(trivial_character(), 2.0, 10000);
    EXPECT_NEAR(z.value.real(), pi * pi / 6, 1e-4);
    EXPECT_LE(std::abs(z.value - pi * pi / 6), z.remainder_bound);

    const auto l = dirichlet_series(character(4, 1), 1.0, 1000000);
    EXPECT_NEAR(l.value.real(), pi / 4, 1e-6);
    EXPECT_LE(std::abs(l.value - pi / 4), l.remainder_bound);

    for (const auto& chi : enumerate_characters(7))
        EXPECT_EQ(dirichlet_series(chi, {1.3, 2}, 1).value, complex_value(1, 0));
    EXPECT_EQ(dirichlet_series(delta(), 9.0, 1).value, complex_value(1, 0));

    EXPECT_THROW(dirichlet_series(trivial_character(), 1.0, 100), math_error);
    EXPECT_THROW(dirichlet_series(character(4, 1), 0.0, 100), math_error);
    EXPECT_THROW(dirichlet_series(trivial_character(), 2.0, 0), math_error);
}

TEST(DirichletSeries, MonotoneInLength) {
    double last = std::numeric_limits<double>::infinity();
    for (std::int64_t N : {1, 10, 100, 1000, 10000, 100000}) {
        const auto r = dirichlet_series(character(8, 1), 2.0, N);
        EXPECT_LE(r.remainder_bound, last);
        last = r.remainder_bound;
    }
}

TEST(CrossRepresentation, EulerProductMatchesSeries) {
    for (int k = 1; k <= 8; ++k)
        for (const auto& chi : enumerate_characters(k)) {
            const auto e = euler_product(chi, 2.0, 100000);
            const auto d = dirichlet_series(chi, 2.0, 1000000);
            EXPECT_LE(std::abs(e.value - d.value), e.remainder_bound + d.remainder_bound) << chi.label();
        }
}

TEST(Reduction, IndependentOfThreadCount) {
    series_options one{1 << 12, 1}, many{1 << 12, 4};
    const auto a = dirichlet_series(character(7, 3), {1.2, 0.4}, 200000, one);
    const auto b = dirichlet_series(character(7, 3), {1.2, 0.4}, 200000, many);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.remainder_bound, b.remainder_bound);
    const auto c = euler_product(trivial_character(), 1.7, 300000, one);
    const auto d = euler_product(trivial_character(), 1.7, 300000, many);
    EXPECT_EQ(c.value, d.value);
}
