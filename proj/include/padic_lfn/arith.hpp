#pragma once

#include <cstdint>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

namespace padic_lfn {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::int64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

/// Primes <= bound, ascending (sieve of Eratosthenes).
inline std::vector<int> primes_up_to(int bound) {
    std::vector<int> out;
    if (bound < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (std::int64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<int>(i));
        for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

/// Prime-power factorization, primes ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::int64_t totient(std::int64_t n) {
    std::int64_t result = n;
    for (auto [q, e] : factorize(n)) result = result / q * (q - 1);
    return result;
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    if (mod == 1) return 0;
    __int128 result = 1;
    __int128 b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

/// Multiplicative order of a unit mod m (brute force; m is small here).
inline std::int64_t multiplicative_order(std::int64_t a, std::int64_t m) {
    if (m == 1) return 1;
    std::int64_t x = ((a % m) + m) % m;
    std::int64_t cur = x;
    for (std::int64_t k = 1; k <= m; ++k) {
        if (cur == 1) return k;
        cur = static_cast<std::int64_t>(static_cast<__int128>(cur) * x % m);
    }
    return 0;
}

/// x with x = a (mod m1), x = b (mod m2), gcd(m1, m2) = 1; result in [0, m1*m2).
inline std::int64_t crt_pair(std::int64_t a, std::int64_t m1, std::int64_t b, std::int64_t m2) {
    // Extended Euclid for the inverse of m1 mod m2.
    std::int64_t old_r = m1 % m2, r = m2, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
    }
    std::int64_t inv = ((old_s % m2) + m2) % m2;
    __int128 diff = ((b - a) % m2 + m2) % m2;
    __int128 t = diff * inv % m2;
    __int128 x = a + m1 * t;
    __int128 mod = static_cast<__int128>(m1) * m2;
    return static_cast<std::int64_t>(((x % mod) + mod) % mod);
}

inline std::int64_t ipow_int(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace padic_lfn
