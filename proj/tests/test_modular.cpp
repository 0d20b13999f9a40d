#include "padic_lfn/modular.hpp"

#include <gtest/gtest.h>

using namespace padic_lfn;

namespace {

// Oracle: multiply 24 copies of prod_{n>=1}(1 - q^n) one factor at a time, then shift by q.
std::vector<big_int> naive_tau(int N) {
    std::vector<big_int> series(static_cast<std::size_t>(N), big_int(0));
    series[0] = 1;
    for (int copy = 0; copy < 24; ++copy)
        for (int n = 1; n < N; ++n)
            // multiply by (1 - q^n) in place, high degrees first
            for (int d = N - 1; d >= n; --d) series[d] -= series[d - n];
    return series;  // tau(n) = series[n - 1]
}

big_int sigma_power(int n, int e) {
    big_int s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += boost::multiprecision::pow(big_int(d), e);
    return s;
}

}  // namespace

TEST(Delta, FirstCoefficients) {
    const std::vector<long long> want{1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
    const auto tau = delta_expansion(10);
    ASSERT_EQ(tau.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(tau[i], big_int(want[i]));
}

TEST(Delta, Normalization) {
    const auto one = delta_expansion(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], big_int(1));
    EXPECT_EQ(coefficient_provider::delta(5).coefficient(1), complex_value(1, 0));
    EXPECT_EQ(verify_recursion(coefficient_provider::delta(8), 2, 1), 0.0);
}

TEST(Delta, MatchesNaiveProduct) {
    const auto fast = delta_expansion(80);
    const auto slow = naive_tau(80);
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_EQ(fast[i], slow[i]) << "n=" << i + 1;
}

TEST(Delta, MatchesDivisorSumIdentity) {
    // 756 tau(n) = 65 sigma_11(n) + 691 sigma_5(n) - 691*252 sum_{j<n} sigma_5(j) sigma_5(n-j).
    const auto tau = delta_expansion(40);
    for (int n = 1; n <= 40; ++n) {
        big_int conv = 0;
        for (int j = 1; j < n; ++j) conv += sigma_power(j, 5) * sigma_power(n - j, 5);
        const big_int rhs = 65 * sigma_power(n, 11) + 691 * sigma_power(n, 5) - 691 * 252 * conv;
        EXPECT_EQ(756 * tau[n - 1], rhs) << "n=" << n;
    }
}

TEST(Delta, MultiplicativeAndHeckeRecursion) {
    const auto f = coefficient_provider::delta(3000);
    for (int m = 2; m <= 50; ++m)
        for (int n = 2; n <= 50; ++n)
            if (std::gcd(m, n) == 1 && m * n <= 3000) {
                EXPECT_EQ(*f.exact_coefficient(m * n), *f.exact_coefficient(m) * *f.exact_coefficient(n));
            }
    for (int p : {2, 3, 5, 7, 11, 13})
        for (int m = 1; ipow_int(p, m + 1) <= 3000; ++m) EXPECT_EQ(verify_recursion(f, p, m), 0.0);
}

TEST(Provider, RangeErrors) {
    const auto f = coefficient_provider::delta(20);
    EXPECT_EQ(f.max_index(), 20);
    try {
        f.coefficient(21);
        FAIL();
    } catch (const math_error& e) {
        EXPECT_EQ(e.kind(), error_kind::out_of_range);
    }
    EXPECT_THROW(f.coefficient(0), math_error);
    EXPECT_THROW(verify_recursion(f, 5, 2), math_error);
}

TEST(Provider, FromTable) {
    // Copy Delta into a float table and corrupt a(8).
    const auto d = coefficient_provider::delta(30);
    std::vector<complex_value> a;
    for (int n = 1; n <= 30; ++n) a.push_back(d.coefficient(n));
    const auto good = coefficient_provider::from_table(12, 1, a);
    EXPECT_LT(verify_recursion(good, 2, 2), 1e-6);
    a[7] += 1.0;
    const auto bad = coefficient_provider::from_table(12, 1, a);
    EXPECT_GT(verify_recursion(bad, 2, 2), 0.5);

    EXPECT_THROW(coefficient_provider::from_table(12, 1, {2.0}), math_error);
    EXPECT_THROW(coefficient_provider::from_table(0, 1, {1.0}), math_error);
    EXPECT_THROW(coefficient_provider::from_table(2, 11, {1.0}, character(5, 0)), math_error);

    // Default nebentypus is principal mod the level: chi(p) = 0 at p | N.
    const auto lvl = coefficient_provider::from_table(2, 11, {1.0, -2.0, -1.0, 2.0, 1.0, 2.0, -2.0, 0.0, -2.0, -2.0, 1.0});
    EXPECT_EQ(lvl.hecke_constant(11), complex_value(0, 0));
    EXPECT_EQ(lvl.hecke_constant(2), complex_value(2, 0));
}

TEST(Factorization, Examples) {
    const auto f = coefficient_provider::delta(10);
    const auto fac = factorize_local(f, 2);
    EXPECT_NEAR(std::abs(fac.root1 + fac.root2 - (-24.0)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(fac.root1 * fac.root2 - 2048.0), 0.0, 1e-9);
    EXPECT_GE(fac.root1.imag(), 0.0);
    EXPECT_NEAR(std::abs(fac.root1), std::pow(2.0, 5.5), 1e-9);

    const auto zero_trace = factorize_quadratic(3, 0.0, 1.0);
    EXPECT_NEAR(std::abs(zero_trace.root1 - complex_value(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(zero_trace.root2 - complex_value(0, -1)), 0.0, 1e-15);

    const auto real_roots = factorize_quadratic(5, 3.0, 2.0);
    EXPECT_NEAR(std::abs(real_roots.root1 - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(real_roots.root2 - 1.0), 0.0, 1e-15);

    const auto degenerate = factorize_quadratic(11, 1.0, 0.0);
    EXPECT_EQ(degenerate.root2, complex_value(0, 0));
    EXPECT_EQ(degenerate.extended_root(2, 3), complex_value(0, 0));
    EXPECT_NEAR(std::abs(degenerate.root1 - 1.0), 0.0, 1e-15);
}

TEST(Factorization, ExtendedRootsAtNegativePowers) {
    const auto fac = factorize_local(coefficient_provider::delta(8), 3);
    for (int i : {1, 2})
        for (int n = 1; n <= 4; ++n) {
            const complex_value want = 1.0 / std::pow(fac.root(i), n);
            EXPECT_NEAR(std::abs(fac.extended_root(i, -n) - want) / std::abs(want), 0.0, 1e-13);
            EXPECT_NEAR(std::abs(fac.extended_root(i, n) * fac.extended_root(i, -n) - 1.0), 0.0, 1e-12);
        }
}

TEST(Factorization, RamanujanBoundForDelta) {
    const auto f = coefficient_provider::delta(200);
    for (int p : primes_up_to(200)) {
        const auto fac = factorize_local(f, p);
        const double scale = std::pow(double(p), 5.5);
        EXPECT_NEAR(std::abs(fac.root1) / scale, 1.0, 1e-9) << p;
        EXPECT_NEAR(std::abs(fac.root2) / scale, 1.0, 1e-9) << p;
        EXPECT_NEAR(std::abs(fac.root1 + fac.root2 - fac.a_p) / scale, 0.0, 1e-12);
    }
}

TEST(SymmetricPowers, SmallCases) {
    const auto fac = factorize_quadratic(7, {1.5, -0.5}, {2.0, 1.0});
    const complex_value a = fac.a_p, c = fac.hecke_constant;
    EXPECT_EQ(symmetric_power_sum(fac, 0), complex_value(1, 0));
    EXPECT_EQ(symmetric_power_sum(fac, 1), a);
    EXPECT_NEAR(std::abs(symmetric_power_sum(fac, 2) - (a * a - c)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(symmetric_power_sum(fac, 3) - (a * a * a - 2.0 * a * c)), 0.0, 1e-12);
    EXPECT_THROW(symmetric_power_sum(fac, -1), math_error);
}

TEST(SymmetricPowers, MatchRootsAndBinomials) {
    // Direct root sums, the binomial expansion and the recurrence agree.
    const auto f = coefficient_provider::delta(8);
    for (int p : {2, 3, 5, 7}) {
        const auto fac = factorize_local(f, p);
        for (int m = 0; m <= 12; ++m) {
            complex_value direct(0, 0);
            for (int n = 0; n <= m; ++n) direct += ipow(fac.root1, m - n) * ipow(fac.root2, n);
            const complex_value rec = symmetric_power_sum(fac, m);
            const double scale = std::pow(double(p), 5.5 * m) * (m + 1);
            EXPECT_NEAR(std::abs(rec - direct) / scale, 0.0, 1e-12);
            EXPECT_NEAR(std::abs(rec - binomial_side(fac.a_p, fac.hecke_constant, m)) / scale, 0.0, 1e-12);
        }
    }
}

TEST(SymmetricPowers, EqualCoefficientsOfPrimePowers) {
    const auto f = coefficient_provider::delta(4096);
    for (int p : {2, 3, 5})
        for (int m = 0; ipow_int(p, m) <= 4096; ++m) {
            const double want = static_cast<double>(*f.exact_coefficient(ipow_int(p, m)));
            const double got = symmetric_power_sum(factorize_local(f, p), m).real();
            EXPECT_NEAR(got, want, 1e-10 * std::max(1.0, std::abs(want)));
        }
}

TEST(SymmetricPowers, RootSwapSymmetry) {
    const auto fac = factorize_quadratic(3, {2.0, 1.0}, {-1.0, 0.5});
    local_factorization swapped = fac;
    std::swap(swapped.root1, swapped.root2);
    for (int m = 0; m < 10; ++m) {
        complex_value a(0, 0), b(0, 0);
        for (int n = 0; n <= m; ++n) {
            a += ipow(fac.root1, m - n) * ipow(fac.root2, n);
            b += ipow(swapped.root1, m - n) * ipow(swapped.root2, n);
        }
        EXPECT_NEAR(std::abs(a - b), 0.0, 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST(Binomial, Values) {
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(30, 15), 155117520u);
    EXPECT_EQ(binomial(3, 4), 0u);
    EXPECT_EQ(binomial(0, 0), 1u);
}
