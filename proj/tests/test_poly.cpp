#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "wittres/groebner.hpp"
#include "wittres/jet.hpp"
#include "wittres/modring.hpp"
#include "wittres/multipoly.hpp"
#include "wittres/singularity.hpp"

using namespace wittres;

namespace {

QPoly::Ring qring1() { return QPoly::make_ring(RationalRing{}, {"x"}); }
QPoly::Ring qring2() { return QPoly::make_ring(RationalRing{}, {"x", "y"}); }

QPoly qterm(const QPoly::Ring& r, Monomial m, Rational c) {
  return QPoly::term(r, std::move(m), c);
}

Rational q(long n, long d = 1) { return Rational(n, d); }

// x^a y^b with exact rational coefficients in [-5,5]
QPoly random_qpoly(const QPoly::Ring& r, std::mt19937& rng, int maxdeg) {
  std::uniform_int_distribution<int> dc(-5, 5), de(0, maxdeg),
      dt(1, 5);
  QPoly p = QPoly::zero(r);
  const int terms = dt(rng);
  for (int t = 0; t < terms; ++t) {
    Monomial m(static_cast<size_t>(r.nvars), 0);
    for (auto& e : m) e = static_cast<unsigned>(de(rng));
    p.add_term(m, q(dc(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("reduced basis of a one-variable jacobian") {
  auto r = qring1();
  QPoly f = qterm(r, {3}, q(1));  // x^3
  auto sing = make_qh(f, {q(1, 3)});
  auto gb = jacobian_basis(sing);

  REQUIRE(gb->entries().size() == 1);
  REQUIRE(gb->entries()[0].g == qterm(r, {2}, q(1)));
  REQUIRE(gb->entries()[0].cof.size() == 1);
  REQUIRE(gb->entries()[0].cof[0] == QPoly::constant(r, q(1, 3)));

  auto st = gb->staircase();
  REQUIRE(st == std::vector<Monomial>{{0}, {1}});
}

TEST_CASE("reduced basis of the D4 jacobian") {
  auto r = qring2();
  // x^3 + x y^2, weights (1/3, 1/3)
  QPoly f = qterm(r, {3, 0}, q(1)) + qterm(r, {1, 2}, q(1));
  auto sing = make_qh(f, {q(1, 3), q(1, 3)});
  auto gb = jacobian_basis(sing);

  REQUIRE(gb->entries().size() == 3);
  // entries sorted by leading monomial: xy, x^2 + y^2/3, y^3
  REQUIRE(gb->entries()[0].g == qterm(r, {1, 1}, q(1)));
  REQUIRE(gb->entries()[1].g ==
          qterm(r, {2, 0}, q(1)) + qterm(r, {0, 2}, q(1, 3)));
  REQUIRE(gb->entries()[2].g == qterm(r, {0, 3}, q(1)));

  auto st = gb->staircase();
  REQUIRE(st == std::vector<Monomial>{{0, 0}, {0, 1}, {1, 0}, {0, 2}});
}

TEST_CASE("non-isolated critical locus is rejected") {
  auto r = qring2();
  QPoly f = qterm(r, {2, 1}, q(1));  // x^2 y
  auto sing = make_qh(f, {q(1, 4), q(1, 2)});
  try {
    jacobian_basis(sing);
    FAIL("expected NotIsolated");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::not_isolated);
  }
}

TEST_CASE("normal forms and cofactors against the original generators") {
  auto r1 = qring1();
  QPoly f1 = qterm(r1, {3}, q(1));
  auto s1 = make_qh(f1, {q(1, 3)});
  auto g1 = jacobian_basis(s1);
  auto d = g1->divide(qterm(r1, {2}, q(1)));
  REQUIRE(d.remainder.is_zero());
  REQUIRE(d.cofactors[0] == QPoly::constant(r1, q(1, 3)));

  auto r2 = qring2();
  QPoly f2 = qterm(r2, {3, 0}, q(1)) + qterm(r2, {1, 2}, q(1));
  auto s2 = make_qh(f2, {q(1, 3), q(1, 3)});
  auto g2 = jacobian_basis(s2);
  auto d2 = g2->divide(qterm(r2, {2, 0}, q(1)));
  REQUIRE(d2.remainder == qterm(r2, {0, 2}, q(-1, 3)));
  REQUIRE(d2.cofactors[0] == QPoly::constant(r2, q(1, 3)));
  REQUIRE(d2.cofactors[1].is_zero());
  // re-expansion: x^2 == (1/3)(3x^2 + y^2) - y^2/3
  QPoly back = d2.cofactors[0] * s2.jacobian[0] +
               d2.cofactors[1] * s2.jacobian[1] + d2.remainder;
  REQUIRE(back == qterm(r2, {2, 0}, q(1)));
}

TEST_CASE("division identity on random inputs") {
  auto r = qring2();
  QPoly f = qterm(r, {3, 0}, q(1)) + qterm(r, {1, 2}, q(1));
  auto sing = make_qh(f, {q(1, 3), q(1, 3)});
  auto gb = jacobian_basis(sing);
  auto st = gb->staircase();
  std::set<Monomial> stset(st.begin(), st.end());

  std::mt19937 rng(20240817);
  for (int t = 0; t < 60; ++t) {
    QPoly p = random_qpoly(r, rng, 6);
    auto d = gb->divide(p);
    QPoly back = d.remainder;
    for (size_t i = 0; i < sing.jacobian.size(); ++i)
      back = back + d.cofactors[i] * sing.jacobian[i];
    REQUIRE(back == p);
    for (const auto& [m, c] : d.remainder.terms())
      REQUIRE(stset.count(m) == 1);
  }
}

TEST_CASE("division works over Z/25 when leading coefficients are units") {
  ZpmRing z25(BigInt(5), 2);
  auto r = ZpmPoly::make_ring(z25, {"x", "y"});
  auto one = Zpm(z25, 1);
  ZpmPoly f = ZpmPoly::term(r, {3, 0}, one) + ZpmPoly::term(r, {1, 2}, one);
  auto sing = make_qh(f, {q(1, 3), q(1, 3)});
  auto gb = jacobian_basis(sing);
  REQUIRE(gb->staircase().size() == 4);

  // 3 is a unit mod 25; the reduced basis matches the rational one
  REQUIRE(gb->entries()[1].g ==
          ZpmPoly::term(r, {2, 0}, one) +
              ZpmPoly::term(r, {0, 2}, Zpm::from_rational(z25, q(1, 3))));

  ZpmPoly p = ZpmPoly::term(r, {4, 1}, Zpm(z25, 7)) +
              ZpmPoly::term(r, {0, 3}, Zpm(z25, 11));
  auto d = gb->divide(p);
  ZpmPoly back = d.remainder;
  for (size_t i = 0; i < sing.jacobian.size(); ++i)
    back = back + d.cofactors[i] * sing.jacobian[i];
  REQUIRE(back == p);
}

TEST_CASE("milnor numbers of sums of powers") {
  auto check = [](std::vector<unsigned> a) {
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(a.size());
    auto r = QPoly::make_ring(RationalRing{}, names);
    QPoly f = QPoly::zero(r);
    std::vector<Rational> w;
    for (size_t i = 0; i < a.size(); ++i) {
      Monomial m(a.size(), 0);
      m[i] = a[i];
      f = f + qterm(r, m, q(1));
      w.push_back(q(1, static_cast<long>(a[i])));
    }
    auto sing = make_qh(f, w);
    auto gb = jacobian_basis(sing);
    size_t mu = 1;
    for (auto ai : a) mu *= ai - 1;
    REQUIRE(gb->staircase().size() == mu);
  };
  check({3, 3});
  check({4, 4});
  check({2, 2, 2});
  check({5, 3});
  check({3, 4, 2});
}

TEST_CASE("grlex and grevlex tie breaks agree on invariants") {
  auto r = qring2();
  QPoly f = qterm(r, {3, 0}, q(1)) + qterm(r, {1, 2}, q(1));
  auto s_rev = make_qh(f, {q(1, 3), q(1, 3)}, TieBreak::grevlex);
  auto s_lex = make_qh(f, {q(1, 3), q(1, 3)}, TieBreak::grlex);
  auto g_rev = jacobian_basis(s_rev);
  auto g_lex = jacobian_basis(s_lex);

  auto st_rev = g_rev->staircase();
  auto st_lex = g_lex->staircase();
  REQUIRE(std::set<Monomial>(st_rev.begin(), st_rev.end()) ==
          std::set<Monomial>(st_lex.begin(), st_lex.end()));

  QPoly p = qterm(r, {2, 0}, q(1));
  REQUIRE(g_rev->normal_form(p) == g_lex->normal_form(p));
}

TEST_CASE("quasi-homogeneity validation") {
  auto r = qring2();
  QPoly bad = qterm(r, {3, 0}, q(1)) + qterm(r, {0, 4}, q(1));
  try {
    make_qh(bad, {q(1, 3), q(1, 3)});
    FAIL("expected NotQuasiHomogeneous");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::not_quasi_homogeneous);
  }
  // same f is fine with the right weights
  REQUIRE(make_qh(bad, {q(1, 3), q(1, 4)}).weight_sum == q(7, 12));

  try {
    make_qh(qterm(r, {1, 1}, q(1)), {q(2, 3), q(1, 3)});
    FAIL("expected weight range rejection");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::not_quasi_homogeneous);
  }
  try {
    make_qh(qterm(qring1(), {3}, q(1)), {q(1, 3), q(1, 3)});
    FAIL("expected arity mismatch");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::type_mismatch);
  }
}

TEST_CASE("weights must map into the coefficient ring") {
  ZpmRing z27(BigInt(3), 3);
  auto r = ZpmPoly::make_ring(z27, {"x"});
  ZpmPoly f = ZpmPoly::term(r, {3}, Zpm(z27, 1));
  try {
    make_qh(f, {q(1, 3)});
    FAIL("expected DenominatorNotInvertible");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::denominator_not_invertible);
  }
}

TEST_CASE("family division pushes cofactor error to higher jet order") {
  auto r = qring1();
  QPoly f = qterm(r, {3}, q(1));
  auto sing = make_qh(f, {q(1, 3)});
  auto gb = jacobian_basis(sing);
  // f_s = x^3 + s x
  auto fam = make_family(sing, gb, qterm(r, {1}, q(1)), 3);

  SECTION("x^2 divides to remainder -s/3") {
    auto h = constant_jet_poly<Rational>(qterm(r, {2}, q(1)), fam.jpring);
    auto d = family_division(fam, h);
    REQUIRE(jet_layer<Rational>(d.remainder, 0, r).is_zero());
    REQUIRE(jet_layer<Rational>(d.remainder, 1, r) ==
            QPoly::constant(r, q(-1, 3)));
    REQUIRE(jet_layer<Rational>(d.remainder, 2, r).is_zero());
    REQUIRE(jet_layer<Rational>(d.cofactors[0], 0, r) ==
            QPoly::constant(r, q(1, 3)));
    REQUIRE(jet_layer<Rational>(d.cofactors[0], 1, r).is_zero());
  }

  SECTION("x^4 divides to remainder s^2/9") {
    auto h = constant_jet_poly<Rational>(qterm(r, {4}, q(1)), fam.jpring);
    auto d = family_division(fam, h);
    REQUIRE(jet_layer<Rational>(d.remainder, 0, r).is_zero());
    REQUIRE(jet_layer<Rational>(d.remainder, 1, r).is_zero());
    REQUIRE(jet_layer<Rational>(d.remainder, 2, r) ==
            QPoly::constant(r, q(1, 9)));
    REQUIRE(jet_layer<Rational>(d.cofactors[0], 0, r) ==
            qterm(r, {2}, q(1, 3)));
    REQUIRE(jet_layer<Rational>(d.cofactors[0], 1, r) ==
            QPoly::constant(r, q(-1, 9)));
  }

  SECTION("identity h == sum cof_i d_i f_s + rem on random jets") {
    std::mt19937 rng(77);
    for (int t = 0; t < 40; ++t) {
      auto h = MultiPoly<QJet>::zero(fam.jpring);
      for (int k = 0; k < fam.sorder; ++k)
        add_jet_layer(h, k, random_qpoly(r, rng, 5));
      auto d = family_division(fam, h);
      auto back = d.remainder;
      for (size_t i = 0; i < d.cofactors.size(); ++i)
        back = back + d.cofactors[i] * fam.jacobian_s[i];
      REQUIRE(back == h);
    }
  }
}

TEST_CASE("family direction must have weighted degree at most 1") {
  auto r = qring1();
  QPoly f = qterm(r, {3}, q(1));
  auto sing = make_qh(f, {q(1, 3)});
  auto gb = jacobian_basis(sing);
  REQUIRE_NOTHROW(make_family(sing, gb, qterm(r, {3}, q(1)), 2));
  try {
    make_family(sing, gb, qterm(r, {4}, q(1)), 2);
    FAIL("expected rejection");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::unsupported);
  }
}
