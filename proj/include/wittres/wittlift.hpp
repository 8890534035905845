#pragma once

// Residue pairings over Z/p^m, identified with W_m(F_p).
//
// The normalization res(hess f) = mu forces a division by the socle
// coefficient c of NF(hess f). Over Z/p^m that division is carried out at
// the raised level m + v_p(mu), where it is exact whenever v_p(c) <= v_p(mu);
// otherwise the prime genuinely obstructs the pairing and
// DenominatorNotInvertible is raised.

#include <memory>
#include <string>
#include <vector>

#include "wittres/brieskorn.hpp"
#include "wittres/milnor.hpp"
#include "wittres/modring.hpp"
#include "wittres/singularity.hpp"
#include "wittres/witt.hpp"

namespace wittres {

// Coefficient-wise image of f in Z/p^m. Denominators must be prime to p.
inline MultiPoly<Zpm> reduce_poly(const MultiPoly<Rational>& f,
                                  const ZpmRing& target) {
  auto ring = MultiPoly<Zpm>::make_ring(target, f.ring().names);
  MultiPoly<Zpm> g = MultiPoly<Zpm>::zero(ring);
  for (const auto& [mono, c] : f.terms())
    g.add_term(mono, Zpm::from_rational(target, c));
  return g;
}

// Coefficients are read as residues mod p and lifted multiplicatively, so
// the lift of a product of monomials with unit coefficients is the product
// of the lifts.
inline MultiPoly<Zpm> teichmuller_lift_poly(const MultiPoly<Rational>& f,
                                            const ZpmRing& target) {
  ZpmRing fp(target.p, 1);
  auto ring = MultiPoly<Zpm>::make_ring(target, f.ring().names);
  MultiPoly<Zpm> g = MultiPoly<Zpm>::zero(ring);
  for (const auto& [mono, c] : f.terms()) {
    Zpm digit = Zpm::from_rational(fp, c);
    g.add_term(mono, teichmuller_zpm(target, digit.value()));
  }
  return g;
}

// Inverse of witt_to_zpm: peel Teichmueller digits off the canonical
// representative, one level at a time.
inline WittVector<Zpm> zpm_to_witt(const Zpm& z) {
  const BigInt& p = z.ring().p;
  const int m = z.ring().m;
  ZpmRing fp(p, 1);
  std::vector<Zpm> digits;
  BigInt rem = z.value();
  for (int i = 0; i < m; ++i) {
    const int level = m - i;
    BigInt d;
    mpz_fdiv_r(d.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t());
    digits.emplace_back(fp, d);
    ZpmRing lr(p, level);
    BigInt diff = rem - teichmuller_zpm(lr, d).value();
    mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), lr.modulus.get_mpz_t());
    require_internal(mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t()) != 0,
                     "Teichmueller digit did not cancel");
    mpz_divexact(diff.get_mpz_t(), diff.get_mpz_t(), p.get_mpz_t());
    rem = diff;
  }
  return WittVector<Zpm>(WittRingT<Zpm>{p, m, fp}, std::move(digits));
}

// The pairing data of one singularity over Z/p^m. `raised` records how many
// extra levels the hessian normalization was computed at.
struct WittContext {
  ZpmRing ring;
  size_t mu = 0;
  int raised = 0;
  MilnorAlgebra<Zpm> milnor;
};

inline WittContext make_witt_context(const MilnorAlgebra<Rational>& central,
                                     const BigInt& p, int m) {
  if (m < 1) fail(errc::unsupported, "level must be at least 1");
  const auto& sing_q = central.singularity();
  const BigInt mu(static_cast<unsigned long>(central.mu()));
  const int v = padic_valuation(p, mu);
  const int raised_level = m + v;

  // Socle coefficient of NF(hess f), computed where the division by it is
  // exact. The staircase must agree with the characteristic-zero one or the
  // reduction is not usable.
  ZpmRing rr(p, raised_level);
  auto sing_r = make_qh(reduce_poly(sing_q.f, rr), sing_q.weights,
                        sing_q.order.tie);
  auto gb_r = jacobian_basis(sing_r);
  if (gb_r->staircase() != central.groebner().staircase())
    fail(errc::denominator_not_invertible,
         "monomial basis degenerates mod " + p.get_str());
  auto nf_h = gb_r->divide(hessian(sing_r.f)).remainder;
  const Monomial socle = central.basis().back();
  Zpm c = Zpm::zero(rr);
  for (const auto& [mono, coeff] : nf_h.terms()) {
    require_internal(mono == socle, "hessian is not a socle multiple mod p^m");
    c = coeff;
  }
  const int vc = c.is_zero() ? raised_level : padic_valuation(p, c.value());
  if (vc > v)
    fail(errc::denominator_not_invertible,
         "hessian socle coefficient has p-valuation " + std::to_string(vc) +
             " but mu = " + mu.get_str() + " only has " + std::to_string(v));

  // scale = mu / c = (mu / p^v) * p^(v - vc) / (c / p^vc), a p-integral
  // quotient determined mod p^m.
  ZpmRing rm(p, m);
  BigInt unit_part, mu_part;
  mpz_divexact(unit_part.get_mpz_t(), c.value().get_mpz_t(),
               pow_ui(p, static_cast<unsigned long>(vc)).get_mpz_t());
  mpz_divexact(mu_part.get_mpz_t(), mu.get_mpz_t(),
               pow_ui(p, static_cast<unsigned long>(v)).get_mpz_t());
  Zpm scale = Zpm(rm, mu_part * pow_ui(p, static_cast<unsigned long>(v - vc))) *
              Zpm(rm, unit_part).inverse();

  auto sing_m = make_qh(reduce_poly(sing_q.f, rm), sing_q.weights,
                        sing_q.order.tie);
  auto gb_m = jacobian_basis(sing_m);
  MilnorAlgebra<Zpm> mil(std::move(sing_m), std::move(gb_m), scale);
  require_internal(mil.basis() == central.basis(),
                   "basis order changed under reduction");
  return WittContext{rm, central.mu(), v, std::move(mil)};
}

struct WittPairing {
  ZpmRing ring;
  std::vector<Monomial> basis;
  std::vector<std::vector<Zpm>> matrix;
  Zpm scale;
  size_t mu = 0;
  int raised = 0;
};

inline WittPairing witt_pairing(const MilnorAlgebra<Rational>& central,
                                const BigInt& p, int m) {
  WittContext ctx = make_witt_context(central, p, m);
  return WittPairing{ctx.ring,          ctx.milnor.basis(),
                     ctx.milnor.residue_pairing(), ctx.milnor.residue_scale(),
                     ctx.mu,            ctx.raised};
}

// Levels 1..mmax of the same pairing, checked against each other under
// reduce_level and against the characteristic-zero matrix where its entries
// are p-integral. A prime that obstructs the construction is reported as
// skipped, not as a failure.
struct CompatLevel {
  int m = 0;
  std::vector<std::vector<Zpm>> matrix;
};

struct CompatReport {
  BigInt p;
  int mmax = 0;
  bool skipped = false;
  std::string reason;
  std::vector<CompatLevel> levels;
  bool chain_ok = false;
  bool rational_ok = false;
};

inline CompatReport compat_check(const MilnorAlgebra<Rational>& central,
                                 const BigInt& p, int mmax) {
  if (mmax < 1) fail(errc::unsupported, "level must be at least 1");
  CompatReport rep;
  rep.p = p;
  rep.mmax = mmax;
  try {
    for (int m = 1; m <= mmax; ++m)
      rep.levels.push_back({m, witt_pairing(central, p, m).matrix});
  } catch (const Error& e) {
    if (e.code() != errc::denominator_not_invertible) throw;
    rep.skipped = true;
    rep.reason = e.what();
    rep.levels.clear();
    return rep;
  }
  const size_t n = central.mu();
  rep.chain_ok = true;
  for (int m = 2; m <= mmax; ++m) {
    const auto& hi = rep.levels[static_cast<size_t>(m - 1)].matrix;
    const auto& lo = rep.levels[static_cast<size_t>(m - 2)].matrix;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (hi[i][j].reduce_level(m - 1) != lo[i][j]) rep.chain_ok = false;
  }
  rep.rational_ok = true;
  const auto kq = central.residue_pairing();
  const auto& top = rep.levels.back().matrix;
  const ZpmRing rm(p, mmax);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (padic_valuation(p, kq[i][j].denominator()) > 0) continue;
      if (Zpm::from_rational(rm, kq[i][j]) != top[i][j]) rep.rational_ok = false;
    }
  return rep;
}

}  // namespace wittres
