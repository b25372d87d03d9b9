#include <qconv/qseries.hpp>
#include <qconv/rational.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qconv;

TEST_CASE("construction reduces and normalizes the sign") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(3, -6) == rat(-1, 2));
    CHECK(rat(0, 7) == Rational(0));
    CHECK(rat(-4, -8) == rat(1, 2));
    CHECK(rat(2, 4).den() == 2);
    CHECK(rat(3, -6).den() == 2);
    CHECK(rat(3, -6).num() == -1);
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("-691/2730 is already reduced") {
    // gcd oracle: 2730 = 2 * 3 * 5 * 7 * 13 and 691 is prime (trial division)
    long n = 691;
    bool prime = true;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) prime = false;
    REQUIRE(prime);
    REQUIRE(2730 % 691 != 0);
    Rational r = rat(-691, 2730);
    CHECK(r.num() == -691);
    CHECK(r.den() == 2730);
}

TEST_CASE("field axioms on random small rationals") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 30);
    auto r = [&]() { return rat(num(rng), den(rng)); };
    for (int i = 0; i < 200; ++i) {
        Rational a = r(), b = r(), c = r();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + Rational(0) == a);
        CHECK(a * Rational(1) == a);
        CHECK(a - a == Rational(0));
        if (!a.is_zero()) CHECK(a / a == Rational(1));
    }
}

TEST_CASE("string parsing round-trips") {
    CHECK(Rational::from_string("-7/480") == rat(-7, 480));
    CHECK(Rational::from_string("12") == Rational(12));
    CHECK(Rational::from_string("39285227520/691").str() == "39285227520/691");
}

namespace {

// Independent Bernoulli oracle: B_k as k! times the coefficient of t^k in
// t/(e^t - 1), computed by exact truncated series division.
Rational bernoulli_oracle(int k) {
    int p = k + 2;
    QSeries denom(p);  // (e^t - 1)/t = sum t^j / (j+1)!
    Rational fact(1);
    for (int j = 0; j < p; ++j) {
        fact *= Rational(j + 1);
        denom.at(j) = Rational(1) / fact;
    }
    QSeries inv = inverse(denom);
    Rational kfact(1);
    for (int j = 2; j <= k; ++j) kfact *= Rational(j);
    return inv.at(k) * kfact;
}

}  // namespace

TEST_CASE("bernoulli numbers against the generating-function oracle") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(2) == rat(1, 6));  // fixes the sign convention
    CHECK(bernoulli(4) == rat(-1, 30));
    CHECK(bernoulli(12) == rat(-691, 2730));
    for (int k = 0; k <= 30; k += 2) CHECK(bernoulli(k) == bernoulli_oracle(k));
    CHECK_THROWS_AS(bernoulli(3), std::invalid_argument);
    CHECK_THROWS_AS(bernoulli(1), std::invalid_argument);
}

TEST_CASE("bernoulli recurrence sum vanishes for even k <= 30") {
    for (int k = 2; k <= 30; k += 2) {
        // sum_{j=0}^{k} C(k+1, j) B_j = 0, B_1 = -1/2
        Rational acc(0);
        for (int j = 0; j <= k; ++j) {
            Integer c;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(j));
            Rational bj = (j == 1) ? rat(-1, 2) : (j % 2 == 1 ? Rational(0) : bernoulli(j));
            acc += Rational(c) * bj;
        }
        CHECK(acc == Rational(0));
    }
}

TEST_CASE("Eisenstein normalizations -2k/B_k") {
    CHECK(Rational(-8) / bernoulli(4) == Rational(240));
    CHECK(Rational(-12) / bernoulli(6) == Rational(-504));
    CHECK(Rational(-16) / bernoulli(8) == Rational(480));
    CHECK(Rational(-20) / bernoulli(10) == Rational(-264));
    CHECK(Rational(-24) / bernoulli(12) == rat(65520, 691));
}
