#pragma once

// Truncated formal power series in q with exact rational coefficients.
// A QSeries of precision P represents a series known modulo q^P: exactly
// the coefficients of q^0 .. q^{P-1} are stored, and no operation ever
// claims coefficients beyond what its inputs certify (binary operations
// return the minimum of the input precisions).

#include <qconv/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qconv {

class QSeries {
public:
    QSeries() : coeffs_(1) {}  // zero series at precision 1

    explicit QSeries(int precision) : coeffs_(check_prec(precision)) {}

    QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("QSeries: empty coefficient vector");
    }

    static QSeries constant(const Rational& c, int precision) {
        QSeries f(precision);
        f.coeffs_[0] = c;
        return f;
    }

    // q^e at the given precision (zero series if e >= precision)
    static QSeries monomial(int e, int precision) {
        QSeries f(precision);
        if (e >= 0 && e < precision) f.coeffs_[static_cast<size_t>(e)] = Rational(1);
        return f;
    }

    int precision() const { return static_cast<int>(coeffs_.size()); }

    const Rational& at(int n) const {
        if (n < 0 || n >= precision()) throw std::out_of_range("QSeries: coefficient beyond precision");
        return coeffs_[static_cast<size_t>(n)];
    }
    Rational& at(int n) {
        if (n < 0 || n >= precision()) throw std::out_of_range("QSeries: coefficient beyond precision");
        return coeffs_[static_cast<size_t>(n)];
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    // Restrict to a smaller precision.
    QSeries truncate(int precision) const {
        if (precision > this->precision()) throw std::invalid_argument("QSeries: cannot extend precision");
        std::vector<Rational> c(coeffs_.begin(), coeffs_.begin() + precision);
        return QSeries(std::move(c));
    }

    // order of vanishing; -1 for the zero series
    int valuation() const {
        for (int n = 0; n < precision(); ++n)
            if (!coeffs_[static_cast<size_t>(n)].is_zero()) return n;
        return -1;
    }

private:
    static size_t check_prec(int p) {
        if (p <= 0) throw std::invalid_argument("QSeries: precision must be positive");
        return static_cast<size_t>(p);
    }

    std::vector<Rational> coeffs_;
};

inline QSeries add(const QSeries& f, const QSeries& g) {
    int p = std::min(f.precision(), g.precision());
    QSeries h(p);
    for (int n = 0; n < p; ++n) h.at(n) = f.at(n) + g.at(n);
    return h;
}

inline QSeries sub(const QSeries& f, const QSeries& g) {
    int p = std::min(f.precision(), g.precision());
    QSeries h(p);
    for (int n = 0; n < p; ++n) h.at(n) = f.at(n) - g.at(n);
    return h;
}

inline QSeries scale(const Rational& c, const QSeries& f) {
    QSeries h(f.precision());
    for (int n = 0; n < f.precision(); ++n) h.at(n) = c * f.at(n);
    return h;
}

// Cauchy product, truncated at min(P_f, P_g). Schoolbook convolution: the
// arithmetic is exact and precisions stay small enough that asymptotics
// never matter here.
inline QSeries mul(const QSeries& f, const QSeries& g) {
    int p = std::min(f.precision(), g.precision());
    QSeries h(p);
    for (int i = 0; i < p; ++i) {
        if (f.at(i).is_zero()) continue;
        for (int j = 0; i + j < p; ++j) {
            if (g.at(j).is_zero()) continue;
            h.at(i + j) += f.at(i) * g.at(j);
        }
    }
    return h;
}

// f(q) -> f(q^t). The result is only claimed modulo q^{P_f}; it uses the
// coefficients of f below ceil(P_f / t).
inline QSeries dilate(const QSeries& f, int t) {
    if (t < 1) throw std::invalid_argument("dilate: t must be >= 1");
    if (t == 1) return f;
    int p = f.precision();
    QSeries h(p);
    for (int m = 0; m * t < p; ++m) h.at(m * t) = f.at(m);
    return h;
}

// D = q d/dq on coefficients: coefficient of q^n becomes n * a(n).
inline QSeries qderiv(const QSeries& f) {
    QSeries h(f.precision());
    for (int n = 0; n < f.precision(); ++n) h.at(n) = Rational(n) * f.at(n);
    return h;
}

// The scaled derivative of a dilation: coefficient of q^n is n * a_f(n/b)
// (zero when b does not divide n). Identical to qderiv(dilate(f, b)).
inline QSeries scaled_deriv(const QSeries& f, int b) { return qderiv(dilate(f, b)); }

// Multiplicative inverse of a series with invertible constant term.
inline QSeries inverse(const QSeries& f) {
    if (f.at(0).is_zero()) throw std::domain_error("inverse: constant term is zero");
    int p = f.precision();
    QSeries g(p);
    Rational c0inv = Rational(1) / f.at(0);
    g.at(0) = c0inv;
    for (int n = 1; n < p; ++n) {
        Rational acc(0);
        for (int j = 1; j <= n; ++j) acc += f.at(j) * g.at(n - j);
        g.at(n) = -acc * c0inv;
    }
    return g;
}

// Integer power by repeated squaring (e may be negative for invertible f).
inline QSeries power(const QSeries& f, long e) {
    if (e == 0) return QSeries::constant(Rational(1), f.precision());
    QSeries base = e < 0 ? inverse(f) : f;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    QSeries acc = QSeries::constant(Rational(1), f.precision());
    while (k) {
        if (k & 1) acc = mul(acc, base);
        base = (k >>= 1) ? mul(base, base) : base;
    }
    return acc;
}

// Multiply by q^e (shifting coefficients up); precision is preserved.
inline QSeries shift(const QSeries& f, int e) {
    if (e < 0) throw std::invalid_argument("shift: negative exponent");
    QSeries h(f.precision());
    for (int n = 0; n + e < f.precision(); ++n) h.at(n + e) = f.at(n);
    return h;
}

inline bool operator==(const QSeries& f, const QSeries& g) {
    if (f.precision() != g.precision()) return false;
    for (int n = 0; n < f.precision(); ++n)
        if (f.at(n) != g.at(n)) return false;
    return true;
}

// Equality of the shared prefix only.
inline bool agree_to_min_precision(const QSeries& f, const QSeries& g) {
    int p = std::min(f.precision(), g.precision());
    for (int n = 0; n < p; ++n)
        if (f.at(n) != g.at(n)) return false;
    return true;
}

}  // namespace qconv
