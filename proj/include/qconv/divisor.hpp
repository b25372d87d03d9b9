#pragma once

// Divisor-power sums with the convention used throughout the formulas:
// sigma_r(x) = 0 whenever x is not a positive integer. This makes the
// sigma(n/a) terms in the closed forms well-defined without case splits
// at call sites.

#include <qconv/rational.hpp>

#include <stdexcept>

namespace qconv {

inline Integer sigma(int r, const Integer& n) {
    if (r < 0) throw std::invalid_argument("sigma: negative power");
    if (n <= 0) return 0;
    Integer total = 0;
    Integer d = 1;
    for (; d * d <= n; ++d) {
        if (n % d != 0) continue;
        Integer dp, ep;
        mpz_pow_ui(dp.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(r));
        total += dp;
        Integer e = n / d;
        if (e != d) {
            mpz_pow_ui(ep.get_mpz_t(), e.get_mpz_t(), static_cast<unsigned long>(r));
            total += ep;
        }
    }
    return total;
}

inline Integer sigma(int r, const Rational& x) {
    if (!x.is_integer() || x.sign() <= 0) return 0;
    return sigma(r, x.num());
}

inline Integer sigma(int r, long n) { return sigma(r, Integer(n)); }

// sigma_r(n/a) with the zero-extension convention
inline Integer sigma_div(int r, long n, long a) {
    if (a <= 0 || n % a != 0) return 0;
    return sigma(r, Integer(n / a));
}

}  // namespace qconv
