#pragma once

// Normalized Eisenstein series.
//   E_k(z) = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n     (even k >= 4)
//   E_2(z) = 1 - 24 sum_{n>=1} sigma(n) q^n                 (quasimodular)

#include <qconv/divisor.hpp>
#include <qconv/qseries.hpp>
#include <qconv/rational.hpp>

#include <stdexcept>

namespace qconv {

inline QSeries eisenstein(int k, int prec) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein: weight must be even and >= 4");
    Rational factor = Rational(-2L * k) / bernoulli(k);
    QSeries f(prec);
    f.at(0) = Rational(1);
    for (int n = 1; n < prec; ++n) f.at(n) = factor * Rational(sigma(k - 1, n));
    return f;
}

inline QSeries eisenstein2(int prec) {
    QSeries f(prec);
    f.at(0) = Rational(1);
    for (int n = 1; n < prec; ++n) f.at(n) = Rational(-24) * Rational(sigma(1, n));
    return f;
}

}  // namespace qconv
