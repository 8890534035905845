#include <catch2/catch_amalgamated.hpp>

#include "wittres/jet.hpp"
#include "wittres/modring.hpp"
#include "wittres/rational.hpp"

using namespace wittres;

TEST_CASE("rational basics") {
    Rational a(1, 3), b(2, 6);
    CHECK(a == b);
    CHECK((a + b) == Rational(2, 3));
    CHECK((a * Rational(3)) == Rational(1));
    CHECK(Rational(7, -14) == Rational(-1, 2));
    CHECK(Rational::parse("-4/6") == Rational(-2, 3));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational(3, 4).inverse() == Rational(4, 3));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK_THROWS_AS(Rational(0).inverse(), Error);
    CHECK(Rational(0).is_zero());
    CHECK(!Rational(1, 7).is_integer());
    CHECK(Rational(14, 7).is_integer());
}

TEST_CASE("padic valuation") {
    CHECK(padic_valuation(BigInt(2), BigInt(36)) == 2);
    CHECK(padic_valuation(BigInt(3), BigInt(36)) == 2);
    CHECK(padic_valuation(BigInt(5), BigInt(36)) == 0);
    CHECK(padic_valuation(BigInt(3), BigInt(-27)) == 3);
}

TEST_CASE("Z/p^m arithmetic") {
    ZpmRing r25(BigInt(5), 2);
    Zpm three(r25, 3);
    CHECK(three.inverse().value() == 17); // 3 * 17 = 51 = 2*25 + 1
    CHECK((three * three.inverse()).is_one());

    Zpm five(r25, 5);
    CHECK(!five.is_unit());
    CHECK_THROWS_AS(five.inverse(), Error);
    try {
        five.inverse();
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_invertible);
    }

    CHECK(Zpm::from_rational(r25, Rational(1, 3)).value() == 17);
    CHECK_THROWS_AS(Zpm::from_rational(r25, Rational(1, 5)), Error);
    try {
        Zpm::from_rational(r25, Rational(1, 10));
    } catch (const Error& e) {
        CHECK(e.code() == errc::denominator_not_invertible);
    }

    CHECK(Zpm(r25, -3).value() == 22);
    CHECK((Zpm(r25, 20) + Zpm(r25, 10)).value() == 5);
    CHECK(Zpm(r25, 2).pow(5).value() == 7);
}

TEST_CASE("Z/p^m characteristic") {
    ZpmRing r27(BigInt(3), 3);
    Zpm one = Zpm::one(r27);
    Zpm acc = Zpm::zero(r27);
    for (int i = 0; i < 27; ++i) acc += one;
    CHECK(acc.is_zero());
    Zpm nine = Zpm(r27, 9); // p^(m-1) * 1 != 0
    CHECK(!nine.is_zero());
}

TEST_CASE("level reduction is a ring map") {
    ZpmRing r125(BigInt(5), 3);
    Zpm a(r125, 94), b(r125, 42);
    CHECK((a * b).reduce_level(2) == a.reduce_level(2) * b.reduce_level(2));
    CHECK((a + b).reduce_level(1) == a.reduce_level(1) + b.reduce_level(1));
}

TEST_CASE("mixing moduli is refused") {
    ZpmRing r25(BigInt(5), 2), r5(BigInt(5), 1);
    CHECK_THROWS_AS(Zpm(r25, 1) + Zpm(r5, 1), Error);
}

TEST_CASE("non-prime modulus base is refused") {
    CHECK_THROWS_AS(ZpmRing(BigInt(6), 1), Error);
    CHECK_THROWS_AS(ZpmRing(BigInt(1), 2), Error);
}

TEST_CASE("jets: nilpotent deformation parameter") {
    QJet::Ring jr{RationalRing{}, 3}; // Q[s]/(s^3)
    QJet s = QJet::zero(jr);
    s.set_coeff(1, Rational(1));

    QJet one = QJet::one(jr);
    QJet g = (one + s).inverse();
    CHECK(g.coeff(0) == Rational(1));
    CHECK(g.coeff(1) == Rational(-1));
    CHECK(g.coeff(2) == Rational(1));
    CHECK(((one + s) * g) == one);

    CHECK(s.pow(3).is_zero()); // s^M = 0 exactly
    CHECK(!s.pow(2).is_zero());
    CHECK(!s.is_unit());
    CHECK_THROWS_AS(s.inverse(), Error);

    QJet f = one + s * QJet(jr, Rational(2)) + s * s * QJet(jr, Rational(5));
    QJet df = f.deriv();
    CHECK(df.coeff(0) == Rational(2));
    CHECK(df.coeff(1) == Rational(10));
    CHECK(df.coeff(2) == Rational(0));

    // product rule on representatives, valid through order M-2
    QJet h = s + s * s;
    QJet lhs = (f * h).deriv();
    QJet rhs = f.deriv() * h + f * h.deriv();
    for (int k = 0; k <= jr.order - 2; ++k) CHECK(lhs.coeff(k) == rhs.coeff(k));
}

TEST_CASE("jets over Z/p^m") {
    ZpmRing r49(BigInt(7), 2);
    Jet<Zpm>::Ring jr{r49, 4};
    Jet<Zpm> a = Jet<Zpm>::from_rational(jr, Rational(1, 3));
    CHECK(a.coeff(0) == Zpm(r49, 33)); // 3*33 = 99 = 2*49 + 1
    Jet<Zpm> s = Jet<Zpm>::zero(jr);
    s.set_coeff(1, Zpm::one(r49));
    CHECK((a + s).is_unit());
    CHECK(((a + s) * (a + s).inverse()) == Jet<Zpm>::one(jr));
}
