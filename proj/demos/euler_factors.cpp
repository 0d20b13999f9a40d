// Prints the local Euler factors of L(s, chi) and L(s, Delta) at the first few
// primes, once as a truncated operator trace and once in closed form.

#include "padic_lfn.hpp"

#include <cstdio>

using namespace padic_lfn;

int main() {
    const auto chi = character(4, 1);
    const complex_value s(2, 0);
    std::printf("L(s, chi mod 4) at s = 2\n  p   trace                 closed form           bound\n");
    for (int p : {3, 5, 7, 11, 13}) {
        const auto req = trace_request::dirichlet(chi, p, s, 48);
        const auto tr = local_trace(req);
        const auto closed = local_factor_closed(req);
        std::printf("%3d   %.15f   %.15f   %.1e\n", p, tr.value.real(), closed.real(), tr.remainder_bound);
    }
    const auto prod = euler_product(chi, s, 100000);
    std::printf("  Euler product up to 1e5: %.12f (+/- %.1e)\n\n", prod.value.real(), prod.remainder_bound);

    const auto delta = coefficient_provider::delta(64);
    std::printf("L(s, Delta) at s = 8\n  p   tau(p)       a_1(p)                         trace / closed - 1\n");
    for (int p : {2, 3, 5, 7}) {
        const auto fac = factorize_local(delta, p);
        const auto req = trace_request::modular(delta, p, 8.0, 64);
        const auto ratio = local_trace(req).value / local_factor_closed(req) - 1.0;
        std::printf("%3d   %-10s   %12.4f %+12.4fi   %.1e\n", p, delta.exact_coefficient(p)->str().c_str(),
                    fac.root1.real(), fac.root1.imag(), std::abs(ratio));
    }
    return 0;
}
