#include <qconv/eta.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace qconv;

namespace {

// Independent oracle: expand prod_{n<limit} (1 - q^{tn})^m by naive repeated
// polynomial multiplication (no pentagonal shortcut, no power-by-squaring).
QSeries naive_eta_block(int t, int m, int prec) {
    QSeries acc = QSeries::constant(Rational(1), prec);
    for (int n = 1; n * t < prec; ++n) {
        QSeries factor(prec);
        factor.at(0) = Rational(1);
        factor.at(n * t) = Rational(-1);
        for (int j = 0; j < m; ++j) acc = mul(acc, factor);
    }
    return acc;
}

}  // namespace

TEST_CASE("eta(z)^24 is the discriminant series") {
    QSeries d = eta_expand(EtaProduct({{1, 24}}), 10);
    CHECK(d.at(0) == Rational(0));
    CHECK(d.at(1) == Rational(1));
    CHECK(d.at(2) == Rational(-24));
    CHECK(d.at(3) == Rational(252));
    CHECK(d.at(4) == Rational(-1472));

    QSeries oracle = shift(naive_eta_block(1, 24, 10), 1);
    CHECK(d == oracle);
}

TEST_CASE("eta(z)^4 eta(5z)^4 leads with q") {
    EtaProduct p({{1, 4}, {5, 4}});
    CHECK(p.lead_order() == Rational(1));
    CHECK(p.weight() == Rational(4));
    QSeries f = eta_expand(p, 8);
    CHECK(f.valuation() == 1);
    CHECK(f.at(1) == Rational(1));
    CHECK(f.at(2) == Rational(-4));  // only (1-q)^4 contributes at q^1 of the block
    QSeries oracle = shift(mul(naive_eta_block(1, 4, 8), naive_eta_block(5, 4, 8)), 1);
    CHECK(f == oracle);
}

TEST_CASE("eta quotient with negative exponent: eta(4z)^32 / eta(z)^8") {
    EtaProduct p({{4, 32}, {1, -8}});
    CHECK(p.lead_order() == Rational(5));
    QSeries f = eta_expand(p, 12);
    CHECK(f.valuation() == 5);
    CHECK(f.at(5) == Rational(1));
    // inversion oracle: f * eta(z)^8 must equal q^5 * block(4)^32 ... compare products instead
    QSeries lhs = mul(f, naive_eta_block(1, 8, 12));
    QSeries rhs = shift(naive_eta_block(4, 32, 12), 5);
    CHECK(lhs == rhs);
}

TEST_CASE("fractional leading exponent is rejected") {
    EtaProduct p({{1, 4}});  // lead order 4/24
    CHECK(p.lead_order() == Rational(1, 6));
    CHECK_THROWS_AS(eta_expand(p, 10), std::domain_error);
}

TEST_CASE("integrality bookkeeping for catalog products") {
    CHECK(EtaProduct({{1, 2}, {2, 2}, {3, 2}, {6, 2}}).lead_order() == Rational(1));
    CHECK(EtaProduct({{1, 16}, {2, 4}}).lead_order() == Rational(1));
    CHECK(EtaProduct({{1, 8}, {2, 4}, {4, 8}}).lead_order() == Rational(2));
    CHECK(EtaProduct({{2, 4}, {4, 16}}).lead_order() == Rational(3));
    CHECK(EtaProduct({{1, 5}, {2, 5}, {3, 1}, {6, 1}}).lead_order() == Rational(1));
    CHECK(EtaProduct({{1, 1}, {2, 1}, {3, 5}, {6, 5}}).lead_order() == Rational(2));
}
