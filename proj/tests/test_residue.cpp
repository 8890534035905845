#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "wittres/milnor.hpp"
#include "wittres/modring.hpp"
#include "wittres/multipoly.hpp"
#include "wittres/singularity.hpp"

using namespace wittres;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

QPoly qterm(const QPoly::Ring& r, Monomial m, Rational c) {
  return QPoly::term(r, std::move(m), c);
}

MilnorAlgebra<Rational> sum_of_powers(const std::vector<unsigned>& a) {
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
  return MilnorAlgebra<Rational>(sing, jacobian_basis(sing));
}

MilnorAlgebra<Rational> d4() {
  auto r = QPoly::make_ring(RationalRing{}, {"x", "y"});
  QPoly f = qterm(r, {3, 0}, q(1)) + qterm(r, {1, 2}, q(1));
  auto sing = make_qh(f, {q(1, 3), q(1, 3)});
  return MilnorAlgebra<Rational>(sing, jacobian_basis(sing));
}

// Independent value for res(x^a y^b) on x^3 + x y^2, obtained by splitting
// the singularity into Morse points with x^3 + x y^2 + eps y and letting
// eps -> 0. Critical points satisfy x^4 = -eps^2/12, y = -eps/(2x), and the
// hessian there is 24 x^2, so the sum over the four points of x^k is
// 4 (-eps^2/12)^{k/4} when 4 | k and 0 otherwise, with k = a - b - 2.
Rational d4_split_residue(unsigned a, unsigned b) {
  const long k = static_cast<long>(a) - static_cast<long>(b) - 2;
  if (k % 4 != 0) return q(0);
  // eps-degree of the summed value is (a+b)/2 - 1; positive degrees vanish
  // in the limit and degree is never negative when 4 | k.
  const long eps_deg = (static_cast<long>(a) + static_cast<long>(b)) / 2 - 1;
  if (eps_deg > 0) return q(0);
  const long quarter = k / 4;
  // (1/24) * (-1/2)^b * 4 * (-1/12)^{k/4}, eps factors dropped at degree 0
  Rational v = q(1, 6);
  Rational half = q(-1, 2), twelfth = q(-1, 12);
  for (unsigned i = 0; i < b; ++i) v = v * half;
  if (quarter >= 0)
    for (long i = 0; i < quarter; ++i) v = v * twelfth;
  else
    for (long i = 0; i < -quarter; ++i) v = v / twelfth;
  return v;
}

}  // namespace

TEST_CASE("residues of one-variable powers") {
  // res(x^k) on x^a is 1/a when k = a-2, else 0: the only term of
  // x^k / (a x^{a-1}) with exponent -1.
  for (unsigned a = 2; a <= 6; ++a) {
    auto M = sum_of_powers({a});
    REQUIRE(M.mu() == a - 1);
    for (unsigned k = 0; k + 1 < a; ++k) {
      Rational expect = (k == a - 2) ? q(1, static_cast<long>(a)) : q(0);
      REQUIRE(M.residue(qterm(M.singularity().f.ring(), {k}, q(1))) == expect);
    }
  }
}

TEST_CASE("frozen residue values") {
  SECTION("x^3") {
    auto M = sum_of_powers({3});
    auto r = M.singularity().f.ring();
    REQUIRE(M.basis() == std::vector<Monomial>{{0}, {1}});
    REQUIRE(M.socle() == Monomial{1});
    REQUIRE(M.residue_scale() == q(1, 3));
    REQUIRE(M.residue(qterm(r, {1}, q(1))) == q(1, 3));
    REQUIRE(M.residue(QPoly::one(r)) == q(0));
  }
  SECTION("x^2 + y^2") {
    auto M = sum_of_powers({2, 2});
    auto r = M.singularity().f.ring();
    REQUIRE(M.mu() == 1);
    REQUIRE(M.residue(QPoly::one(r)) == q(1, 4));
  }
  SECTION("x^3 + y^3") {
    auto M = sum_of_powers({3, 3});
    auto r = M.singularity().f.ring();
    REQUIRE(M.mu() == 4);
    REQUIRE(M.socle() == Monomial{1, 1});
    REQUIRE(M.residue(qterm(r, {1, 1}, q(1))) == q(1, 9));
  }
  SECTION("x^4") {
    auto M = sum_of_powers({4});
    auto r = M.singularity().f.ring();
    REQUIRE(M.residue_scale() == q(1, 4));
    REQUIRE(M.residue(qterm(r, {2}, q(1))) == q(1, 4));
  }
  SECTION("x^3 + x y^2") {
    auto M = d4();
    auto r = M.singularity().f.ring();
    REQUIRE(M.basis() ==
            std::vector<Monomial>{{0, 0}, {1, 0}, {0, 1}, {0, 2}});
    REQUIRE(M.socle() == Monomial{0, 2});
    REQUIRE(M.residue(qterm(r, {0, 2}, q(1))) == q(-1, 2));
    REQUIRE(M.residue(qterm(r, {2, 0}, q(1))) == q(1, 6));
    REQUIRE(M.residue(qterm(r, {1, 1}, q(1))) == q(0));
  }
}

TEST_CASE("residue of the hessian is the milnor number") {
  for (auto a : std::vector<std::vector<unsigned>>{
           {3}, {4}, {5}, {2, 2}, {3, 3}, {4, 4}, {5, 3}, {2, 2, 2}, {3, 3, 2}}) {
    auto M = sum_of_powers(a);
    REQUIRE(M.residue(hessian(M.singularity().f)) ==
            Rational(static_cast<long>(M.mu())));
  }
  auto M = d4();
  REQUIRE(M.residue(hessian(M.singularity().f)) == q(4));
}

TEST_CASE("residue vanishes on the jacobian ideal") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> dc(-4, 4), de(0, 3);
  auto M = d4();
  auto r = M.singularity().f.ring();
  for (int t = 0; t < 40; ++t) {
    Monomial m{static_cast<unsigned>(de(rng)), static_cast<unsigned>(de(rng))};
    QPoly h = qterm(r, m, q(dc(rng)));
    for (const auto& dj : M.singularity().jacobian)
      REQUIRE(M.residue(dj * h) == q(0));
  }
}

TEST_CASE("residue is linear") {
  std::mt19937 rng(6021);
  std::uniform_int_distribution<int> dc(-6, 6), de(0, 4);
  auto M = sum_of_powers({4, 4});
  auto r = M.singularity().f.ring();
  for (int t = 0; t < 30; ++t) {
    QPoly g = QPoly::zero(r), h = QPoly::zero(r);
    for (int i = 0; i < 3; ++i) {
      g.add_term({static_cast<unsigned>(de(rng)), static_cast<unsigned>(de(rng))},
                 q(dc(rng)));
      h.add_term({static_cast<unsigned>(de(rng)), static_cast<unsigned>(de(rng))},
                 q(dc(rng)));
    }
    Rational a = q(dc(rng)), b = q(dc(rng));
    REQUIRE(M.residue(g.scale(a) + h.scale(b)) ==
            a * M.residue(g) + b * M.residue(h));
  }
}

TEST_CASE("sums of powers match the product formula") {
  for (auto a : std::vector<std::vector<unsigned>>{{3, 3}, {4, 4}, {5, 3},
                                                   {3, 4, 2}}) {
    auto M = sum_of_powers(a);
    auto r = M.singularity().f.ring();
    // every basis monomial, plus monomials slightly outside the staircase
    std::vector<Monomial> probe = M.basis();
    for (auto m : M.basis()) {
      m[0] += 1;
      probe.push_back(m);
    }
    for (const auto& m : probe)
      REQUIRE(M.residue(qterm(r, m, q(1))) == bp_residue(a, m));
  }
  auto M53 = sum_of_powers({5, 3});
  REQUIRE(M53.residue(qterm(M53.singularity().f.ring(), {3, 1}, q(1))) ==
          q(1, 15));
}

TEST_CASE("morse splitting of the D4 point") {
  auto M = d4();
  auto r = M.singularity().f.ring();
  for (unsigned a = 0; a <= 6; ++a)
    for (unsigned b = 0; b <= 6; ++b)
      REQUIRE(M.residue(qterm(r, {a, b}, q(1))) == d4_split_residue(a, b));
}

TEST_CASE("residue pairing matrices") {
  SECTION("x^3") {
    auto K = sum_of_powers({3}).residue_pairing();
    REQUIRE(K == std::vector<std::vector<Rational>>{{q(0), q(1, 3)},
                                                    {q(1, 3), q(0)}});
  }
  SECTION("x^2 + y^2") {
    auto K = sum_of_powers({2, 2}).residue_pairing();
    REQUIRE(K == std::vector<std::vector<Rational>>{{q(1, 4)}});
  }
  SECTION("x^4 is anti-diagonal") {
    auto M = sum_of_powers({4});
    REQUIRE(M.basis() == std::vector<Monomial>{{0}, {1}, {2}});
    auto K = M.residue_pairing();
    REQUIRE(K == std::vector<std::vector<Rational>>{
                     {q(0), q(0), q(1, 4)},
                     {q(0), q(1, 4), q(0)},
                     {q(1, 4), q(0), q(0)}});
  }
  SECTION("symmetry and nondegeneracy") {
    for (auto mk : {sum_of_powers({3, 3}), sum_of_powers({4, 4}), d4()}) {
      auto K = mk.residue_pairing();
      for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = 0; j < K.size(); ++j) REQUIRE(K[i][j] == K[j][i]);
      REQUIRE(!(matrix_det(K, RationalRing{}) == q(0)));
    }
  }
  SECTION("support pairs complementary degrees") {
    auto M = d4();
    const auto& w = M.singularity().weights;
    auto K = M.residue_pairing();
    const Rational top =
        MilnorAlgebra<Rational>::weight_of(w, M.socle());
    for (size_t i = 0; i < K.size(); ++i)
      for (size_t j = 0; j < K.size(); ++j) {
        if (K[i][j] == q(0)) continue;
        REQUIRE(MilnorAlgebra<Rational>::weight_of(w, M.basis()[i]) +
                    MilnorAlgebra<Rational>::weight_of(w, M.basis()[j]) ==
                top);
      }
  }
}

TEST_CASE("residues over Z/p^m") {
  SECTION("x^3 mod 25: unit hessian coefficient") {
    ZpmRing z25(BigInt(5), 2);
    auto r = ZpmPoly::make_ring(z25, {"x"});
    ZpmPoly f = ZpmPoly::term(r, {3}, Zpm(z25, 1));
    auto sing = make_qh(f, {q(1, 3)});
    MilnorAlgebra<Zpm> M(sing, jacobian_basis(sing));
    REQUIRE(M.residue_scale() == Zpm(z25, 17));  // 1/3 mod 25
    REQUIRE(M.residue(ZpmPoly::term(r, {1}, Zpm(z25, 1))) == Zpm(z25, 17));
  }
  SECTION("x^4 mod 9: socle coefficient 12 is not a unit") {
    ZpmRing z9(BigInt(3), 2);
    auto r = ZpmPoly::make_ring(z9, {"x"});
    ZpmPoly f = ZpmPoly::term(r, {4}, Zpm(z9, 1));
    auto sing = make_qh(f, {q(1, 4)});
    try {
      MilnorAlgebra<Zpm> M(sing, jacobian_basis(sing));
      FAIL("expected DenominatorNotInvertible");
    } catch (const Error& e) {
      REQUIRE(e.code() == errc::denominator_not_invertible);
    }
    // the scale computed at a raised level is 1/4 mod 9 = 7
    MilnorAlgebra<Zpm> M(sing, jacobian_basis(sing),
                         Zpm::from_rational(z9, q(1, 4)));
    REQUIRE(M.residue(ZpmPoly::term(r, {2}, Zpm(z9, 1))) == Zpm(z9, 7));
  }
}
