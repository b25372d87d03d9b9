#pragma once

// Exact rational arithmetic on top of GMP. Values are immutable in spirit:
// every operation returns a new, fully reduced value with positive
// denominator, so equality is plain coefficient comparison everywhere else
// in the library.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qconv {

using Integer = mpz_class;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const Integer& n) : v_(n) {}

    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    static Rational from_string(const std::string& s) {
        // accepts "a" or "a/b"
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
        q.canonicalize();
        Rational r;
        r.v_ = q;
        return r;
    }

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    // Throws unless the value is an integer that fits in long.
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw std::domain_error("Rational: not a small integer");
        return v_.get_num().get_si();
    }

    std::string str() const { return v_.get_str(); }

    Rational operator-() const { Rational r; r.v_ = -v_; return r; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

// rat(num, den): reduced, denominator-positive representation of num/den.
inline Rational rat(long num, long den) { return Rational(num, den); }
inline Rational rat(const Integer& num, const Integer& den) { return Rational(num, den); }

// k-th Bernoulli number, in the convention with B_2 = 1/6 (so that
// E_4 = 1 + 240 sum sigma_3(n) q^n). Only even k is meaningful here;
// odd k is rejected.
inline Rational bernoulli(int k) {
    if (k < 0) throw std::invalid_argument("bernoulli: negative index");
    if (k % 2 != 0) throw std::invalid_argument("bernoulli: odd index unsupported");
    // recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0, with B_1 = -1/2
    std::vector<Rational> b(static_cast<size_t>(k) + 1);
    for (int m = 0; m <= k; ++m) {
        if (m == 0) {
            b[0] = Rational(1);
            continue;
        }
        Rational acc(0);
        for (int j = 0; j < m; ++j) {
            Integer c;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m + 1), static_cast<unsigned long>(j));
            acc += Rational(c) * b[static_cast<size_t>(j)];
        }
        b[static_cast<size_t>(m)] = -acc / Rational(m + 1);
    }
    return b[static_cast<size_t>(k)];
}

}  // namespace qconv
