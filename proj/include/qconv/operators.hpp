#pragma once

// The extended Ramanujan-Serre derivative and the second-order forms built
// from it. Everything here takes and returns plain truncated series;
// modularity of the results is never assumed internally, only certified
// downstream by exact basis membership.

#include <qconv/eisenstein.hpp>
#include <qconv/qseries.hpp>

#include <numeric>
#include <stdexcept>

namespace qconv {

// theta_{k;(a,b)}(f) = D_s f(bz) - (k/12) a E_2(az) f(bz), where D_s f(bz)
// has n-th coefficient n a_f(n/b). Maps weight k to weight k+2.
inline QSeries theta(const QSeries& f, int k, int a, int b, int prec) {
    if (a < 1 || b < 1) throw std::invalid_argument("theta: a, b must be positive");
    QSeries fb = dilate(f.precision() > prec ? f.truncate(prec) : f, b);
    QSeries e2a = dilate(eisenstein2(prec), a);
    Rational c = Rational(-static_cast<long>(k) * a, 12);
    return add(qderiv(fb), scale(c, mul(e2a, fb)));
}

// (6/b) D_s E_2(az) + (6/a) D_s E_2(bz) - E_2(az) E_2(bz); weight 4.
inline QSeries phi(int a, int b, int prec) {
    if (a < 1 || b < 1) throw std::invalid_argument("phi: a, b must be positive");
    if (std::gcd(a, b) != 1) throw std::invalid_argument("phi: a, b must be coprime");
    QSeries e2 = eisenstein2(prec);
    QSeries e2a = dilate(e2, a), e2b = dilate(e2, b);
    QSeries out = scale(Rational(6, b), qderiv(e2a));
    out = add(out, scale(Rational(6, a), qderiv(e2b)));
    out = sub(out, mul(e2a, e2b));
    return out;
}

// D_s^2 E_k(bz) + (ka/12)(k+1) D_s E_2(az) E_k(bz)
//               - (a(k+1)/6) E_2(az) D_s E_k(bz);  weight k+4.
inline QSeries second_form_A(int k, int a, int b, int prec) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("second_form_A: k must be even and >= 4");
    if (std::gcd(a, b) != 1) throw std::invalid_argument("second_form_A: a, b must be coprime");
    QSeries ekb = dilate(eisenstein(k, prec), b);
    QSeries e2a = dilate(eisenstein2(prec), a);
    QSeries out = qderiv(qderiv(ekb));
    out = add(out, scale(Rational(static_cast<long>(k) * a * (k + 1), 12), mul(qderiv(e2a), ekb)));
    out = sub(out, scale(Rational(static_cast<long>(a) * (k + 1), 6), mul(e2a, qderiv(ekb))));
    return out;
}

// (6/b) D_s^2 E_2(az) + (6/a) D_s^2 E_2(bz)
//   - E_2(az) [ 3 D_s E_2(bz) + (2a/b) D_s E_2(az) ]
//   + E_2(bz) [ 3 D_s E_2(az) + (a/3) E_4(az) ];  weight 6.
inline QSeries second_form_B(int a, int b, int prec) {
    if (std::gcd(a, b) != 1) throw std::invalid_argument("second_form_B: a, b must be coprime");
    QSeries e2 = eisenstein2(prec);
    QSeries e2a = dilate(e2, a), e2b = dilate(e2, b);
    QSeries de2a = qderiv(e2a), de2b = qderiv(e2b);
    QSeries e4a = dilate(eisenstein(4, prec), a);

    QSeries out = scale(Rational(6, b), qderiv(de2a));
    out = add(out, scale(Rational(6, a), qderiv(de2b)));
    QSeries bracket1 = add(scale(Rational(3), de2b), scale(Rational(2L * a, b), de2a));
    out = sub(out, mul(e2a, bracket1));
    QSeries bracket2 = add(scale(Rational(3), de2a), scale(Rational(a, 3), e4a));
    out = add(out, mul(e2b, bracket2));
    return out;
}

}  // namespace qconv
