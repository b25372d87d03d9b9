#pragma once

// Dedekind eta products: formal products prod_i eta(t_i z)^{m_i}, expanded
// as classical q-series. eta(z) = q^{1/24} prod_{n>=1} (1 - q^n), so the
// product has leading exponent (sum t_i m_i)/24, which must be a
// nonnegative integer for the object to be an integral-weight q-expansion.

#include <qconv/qseries.hpp>
#include <qconv/rational.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace qconv {

struct EtaFactor {
    int dilation = 1;  // t in eta(t z)
    int exponent = 1;  // m, nonzero (negative = quotient)
};

class EtaProduct {
public:
    explicit EtaProduct(std::vector<EtaFactor> factors) : factors_(std::move(factors)) {
        for (const auto& f : factors_) {
            if (f.dilation < 1) throw std::invalid_argument("EtaProduct: dilation must be >= 1");
            if (f.exponent == 0) throw std::invalid_argument("EtaProduct: zero exponent");
        }
    }

    const std::vector<EtaFactor>& factors() const { return factors_; }

    // (sum t*m)/24, as an exact rational
    Rational lead_order() const {
        long s = 0;
        for (const auto& f : factors_) s += static_cast<long>(f.dilation) * f.exponent;
        return Rational(s, 24);
    }

    // (sum m)/2
    Rational weight() const {
        long s = 0;
        for (const auto& f : factors_) s += f.exponent;
        return Rational(s, 2);
    }

private:
    std::vector<EtaFactor> factors_;
};

// prod_{n>=1} (1 - q^{tn}) by the pentagonal number theorem.
inline QSeries euler_product(int t, int prec) {
    QSeries f(prec);
    f.at(0) = Rational(1);
    for (long k = 1;; ++k) {
        long g1 = k * (3 * k - 1) / 2;  // generalized pentagonal numbers
        long g2 = k * (3 * k + 1) / 2;
        Rational s((k % 2) ? -1 : 1);
        bool any = false;
        if (g1 * t < prec) {
            f.at(static_cast<int>(g1 * t)) = s;
            any = true;
        }
        if (g2 * t < prec) {
            f.at(static_cast<int>(g2 * t)) = s;
            any = true;
        }
        if (!any) break;
    }
    return f;
}

// q-expansion of the product to the given precision. Negative exponents are
// handled by exact inversion of the unit-leading Euler factor.
inline QSeries eta_expand(const EtaProduct& p, int prec) {
    Rational lead = p.lead_order();
    if (!lead.is_integer() || lead.sign() < 0)
        throw std::domain_error("eta_expand: leading exponent " + lead.str() + " is not a nonnegative integer");
    long shift_by = lead.to_long();

    QSeries acc = QSeries::constant(Rational(1), prec);
    for (const auto& f : p.factors()) {
        QSeries e = euler_product(f.dilation, prec);
        acc = mul(acc, power(e, f.exponent));
    }
    if (shift_by >= prec) return QSeries(prec);  // everything beyond the window
    return shift(acc, static_cast<int>(shift_by));
}

}  // namespace qconv
