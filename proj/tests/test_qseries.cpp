#include <qconv/eisenstein.hpp>
#include <qconv/eta.hpp>
#include <qconv/qseries.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qconv;

namespace {

QSeries random_series(std::mt19937& rng, int prec) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 7);
    QSeries f(prec);
    for (int n = 0; n < prec; ++n) f.at(n) = rat(num(rng), den(rng));
    return f;
}

}  // namespace

TEST_CASE("add basics") {
    QSeries one_plus_q({Rational(1), Rational(1)});
    QSeries one_minus_q({Rational(1), Rational(-1)});
    QSeries s = add(one_plus_q, one_minus_q);
    CHECK(s.precision() == 2);
    CHECK(s.at(0) == Rational(2));
    CHECK(s.at(1) == Rational(0));

    QSeries f = random_series(*new std::mt19937(1), 8);
    CHECK(add(f, QSeries(8)) == f);

    QSeries e4 = eisenstein(4, 10);
    CHECK(add(e4, scale(Rational(-1), e4)).is_zero());
}

TEST_CASE("precision follows the minimum of the operands") {
    QSeries f(10), g(6);
    CHECK(add(f, g).precision() == 6);
    CHECK(mul(f, g).precision() == 6);
}

TEST_CASE("mul: geometric series inverse") {
    int p = 12;
    QSeries geo(p);
    for (int n = 0; n < p; ++n) geo.at(n) = Rational(1);
    QSeries one_minus_q(p);
    one_minus_q.at(0) = Rational(1);
    one_minus_q.at(1) = Rational(-1);
    QSeries prod = mul(one_minus_q, geo);
    CHECK(prod.at(0) == Rational(1));
    for (int n = 1; n < p; ++n) CHECK(prod.at(n) == Rational(0));
    CHECK(inverse(one_minus_q) == geo);
}

TEST_CASE("E_2 squared has q-coefficient -48") {
    QSeries e2 = eisenstein2(6);
    CHECK(mul(e2, e2).at(1) == Rational(-48));
}

TEST_CASE("ring laws on random series") {
    std::mt19937 rng(7);
    for (int i = 0; i < 120; ++i) {
        QSeries f = random_series(rng, 9), g = random_series(rng, 9), h = random_series(rng, 9);
        CHECK(mul(f, g) == mul(g, f));
        CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
        CHECK(mul(f, add(g, h)) == add(mul(f, g), mul(f, h)));
    }
}

TEST_CASE("dilate") {
    QSeries e4 = eisenstein(4, 8);
    CHECK(dilate(e4, 2).at(2) == Rational(240));
    CHECK(dilate(e4, 2).at(1) == Rational(0));
    CHECK(dilate(e4, 1) == e4);

    QSeries f(8);
    f.at(1) = Rational(1);
    f.at(2) = Rational(1);
    QSeries d = dilate(f, 3);
    CHECK(d.at(3) == Rational(1));
    CHECK(d.at(6) == Rational(1));
    CHECK(d.at(1) == Rational(0));
}

TEST_CASE("dilation is a ring homomorphism") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        QSeries f = random_series(rng, 10), g = random_series(rng, 10);
        int t = 1 + static_cast<int>(rng() % 4);
        CHECK(dilate(mul(f, g), t) == mul(dilate(f, t), dilate(g, t)));
        CHECK(dilate(add(f, g), t) == add(dilate(f, t), dilate(g, t)));
    }
}

TEST_CASE("qderiv") {
    CHECK(qderiv(QSeries::constant(Rational(1), 5)).is_zero());
    CHECK(qderiv(eisenstein2(5)).at(1) == Rational(-24));
    QSeries q3 = QSeries::monomial(3, 6);
    CHECK(qderiv(q3).at(3) == Rational(3));
}

TEST_CASE("Leibniz rule") {
    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        QSeries f = random_series(rng, 10), g = random_series(rng, 10);
        CHECK(qderiv(mul(f, g)) == add(mul(qderiv(f), g), mul(f, qderiv(g))));
    }
}

TEST_CASE("scaled derivative of a dilation") {
    QSeries e4 = eisenstein(4, 10);
    CHECK(scaled_deriv(e4, 2).at(2) == Rational(480));
    CHECK(scaled_deriv(e4, 1) == qderiv(e4));
    CHECK(scaled_deriv(QSeries::constant(Rational(5), 8), 3).is_zero());

    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        QSeries f = random_series(rng, 12);
        int b = 1 + static_cast<int>(rng() % 5);
        CHECK(scaled_deriv(f, b) == qderiv(dilate(f, b)));
    }
}

TEST_CASE("tau recursion from the logarithmic derivative of Delta") {
    // tau(n) = 24/(1-n) * sum_{m=1}^{n-1} sigma(m) tau(n-m), n >= 2
    int p = 51;
    QSeries delta = eta_expand(EtaProduct({{1, 24}}), p);
    REQUIRE(delta.at(1) == Rational(1));
    for (int n = 2; n < p; ++n) {
        Rational acc(0);
        for (int m = 1; m < n; ++m) acc += Rational(sigma(1, m)) * delta.at(n - m);
        CHECK(delta.at(n) == Rational(24, 1 - n) * acc);
    }
}

TEST_CASE("power and shift") {
    QSeries f(6);
    f.at(0) = Rational(1);
    f.at(1) = Rational(2);
    CHECK(power(f, 0) == QSeries::constant(Rational(1), 6));
    CHECK(power(f, 3) == mul(f, mul(f, f)));
    CHECK(mul(power(f, -2), mul(f, f)) == QSeries::constant(Rational(1), 6));
    CHECK(shift(f, 2).at(3) == Rational(2));
}
