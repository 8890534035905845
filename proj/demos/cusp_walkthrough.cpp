// End-to-end tour on the cusp x^3: Milnor data, the pairing on the lattice,
// its flat extension along the deformation x^3 + s x, and the same pairing
// over Z/25. Build and run:
//
//   cmake --build build --target cusp_walkthrough && ./build/cusp_walkthrough

#include <iostream>

#include "wittres/brieskorn.hpp"
#include "wittres/wittlift.hpp"

using namespace wittres;

int main() {
  auto ring = QPoly::make_ring(RationalRing{}, {"x"});
  QPoly f = QPoly::term(ring, {3}, Rational(1));

  auto sing = make_qh(f, {Rational(1, 3)});
  auto gb = jacobian_basis(sing);
  MilnorAlgebra<Rational> mil(sing, gb);

  std::cout << "f = x^3, weight 1/3\n";
  std::cout << "mu = " << mil.mu() << ", basis {1, x}, socle x\n";
  std::cout << "res(x) = " << mil.residue(QPoly::variable(ring, 0)).str()
            << "  (normalized so that res(hess f) = mu)\n\n";

  BrieskornContext<Rational> ctx(mil);
  const long N = 8;

  std::cout << "exponents:";
  for (const auto& a : ctx.exponents()) std::cout << " " << a.str();
  std::cout << "\n";

  // [x^3 dx] rewrites to -(t/3)[dx]: one integration by parts
  auto v = ctx.reduce_form(QPoly::term(ring, {3}, Rational(1)), N);
  std::cout << "[x^3 dx] = (" << v[0].str() << ") [dx] + (" << v[1].str()
            << ") [x dx]\n";

  auto K = ctx.pairing_basis(N);
  auto u3 = ctx.reduce_form(QPoly::term(ring, {3}, Rational(1)), N);
  auto u1 = ctx.basis_element(1, N);
  std::cout << "K([x^3 dx], [x dx]) = " << ctx.pairing_eval(K, u3, u1).str()
            << "\n\n";

  for (const auto& c : verify_central_axioms(ctx, N, 6, 1u))
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";

  // deform along g = x and extend the pairing flatly in s
  auto fam = make_family(sing, gb, QPoly::variable(ring, 0), 4);
  FamilyBrieskorn<Rational> fb(std::move(fam), mil);
  auto levels = fb.flat_levels(6);
  std::cout << "\nflat extension along x^3 + s x:\n";
  for (size_t r = 0; r < levels.size(); ++r) {
    std::cout << "  s^" << r << ": [[" << levels[r][0][0].str() << ", "
              << levels[r][0][1].str() << "], [" << levels[r][1][0].str()
              << ", " << levels[r][1][1].str() << "]]\n";
  }

  // the same pairing over Z/25, normalized at the lifted level
  auto wp = witt_pairing(mil, BigInt(5), 2);
  std::cout << "\nover Z/" << wp.ring.modulus.get_str() << ": K(1, x) = "
            << wp.matrix[0][1].value().get_str() << " with Witt digits (";
  auto digits = zpm_to_witt(wp.matrix[0][1]);
  for (int i = 0; i < digits.length(); ++i)
    std::cout << (i ? ", " : "") << digits.component(i).value().get_str();
  std::cout << ")\n";
  return 0;
}
