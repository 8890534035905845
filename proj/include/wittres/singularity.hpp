#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "groebner.hpp"
#include "jet.hpp"
#include "multipoly.hpp"
#include "rational.hpp"

namespace wittres {

// A polynomial f with rational weights w_i in (0, 1/2] satisfying the Euler
// identity f = sum_i w_i x_i d_i f exactly. Over Z/p^m the weights must map
// into the ring; a weight denominator divisible by p is reported as
// DenominatorNotInvertible before any ideal computation starts.

template <class R>
struct QHSingularity {
  MultiPoly<R> f;
  std::vector<Rational> weights;
  MonomialOrder order;
  std::vector<MultiPoly<R>> jacobian;  // d_1 f, ..., d_n f
  Rational weight_sum;
};

template <class R>
QHSingularity<R> make_qh(MultiPoly<R> f, std::vector<Rational> weights,
                         TieBreak tie = TieBreak::grevlex) {
  const auto ring = f.ring();
  const int n = ring.nvars;
  if (static_cast<int>(weights.size()) != n)
    fail(errc::type_mismatch, "expected one weight per variable");
  const Rational half = Rational::parse("1/2");
  Rational wsum = Rational::zero({});
  for (const auto& w : weights) {
    if (!(Rational::zero({}) < w) || half < w)
      fail(errc::not_quasi_homogeneous,
           "weight " + w.str() + " outside (0, 1/2]");
    wsum = wsum + w;
  }
  if (f.is_zero()) fail(errc::not_quasi_homogeneous, "zero polynomial");

  std::vector<MultiPoly<R>> jac;
  for (int i = 0; i < n; ++i) jac.push_back(f.derivative(i));

  MultiPoly<R> euler = MultiPoly<R>::zero(ring);
  for (int i = 0; i < n; ++i) {
    Monomial xi(n, 0);
    xi[static_cast<size_t>(i)] = 1;
    euler = euler + (MultiPoly<R>::term(ring, xi, R::one(ring.base)) * jac[i])
                        .scale(R::from_rational(ring.base, weights[i]));
  }
  if (!(euler == f))
    fail(errc::not_quasi_homogeneous,
         "Euler identity fails for the given weights");

  MonomialOrder ord{weights, tie};
  return QHSingularity<R>{std::move(f), std::move(weights), std::move(ord),
                          std::move(jac), wsum};
}

template <class R>
std::shared_ptr<GroebnerBasis<R>> jacobian_basis(const QHSingularity<R>& s) {
  auto gb = std::make_shared<GroebnerBasis<R>>(s.jacobian, s.order);
  if (!gb->zero_dimensional())
    fail(errc::not_isolated, "critical locus of " + s.f.str() +
                                 " is not isolated");
  return gb;
}

// Jet slicing. A one-parameter family lives in (R[s]/(s^M))[x]; the layers
// are the s^k coefficients, plain polynomials over R.

template <class R>
MultiPoly<R> jet_layer(const MultiPoly<Jet<R>>& h, int k,
                       const typename MultiPoly<R>::Ring& target) {
  MultiPoly<R> out = MultiPoly<R>::zero(target);
  for (const auto& [mono, c] : h.terms()) {
    const R v = c.coeff(k);
    if (!v.is_zero()) out.add_term(mono, v);
  }
  return out;
}

template <class R>
void add_jet_layer(MultiPoly<Jet<R>>& target, int k, const MultiPoly<R>& p) {
  const auto jring = target.ring().base;
  for (const auto& [mono, c] : p.terms()) {
    Jet<R> jc = Jet<R>::zero(jring);
    jc.set_coeff(k, c);
    target.add_term(mono, jc);
  }
}

template <class R>
MultiPoly<Jet<R>> constant_jet_poly(const MultiPoly<R>& p,
                                    const typename MultiPoly<Jet<R>>::Ring& jpr) {
  MultiPoly<Jet<R>> out = MultiPoly<Jet<R>>::zero(jpr);
  add_jet_layer(out, 0, p);
  return out;
}

// f_s = f + s g with deg_w g <= 1, truncated at s^M. The Jacobian ideal of
// the family is generated by d_i f + s d_i g.

template <class R>
struct Family {
  QHSingularity<R> base;
  std::shared_ptr<GroebnerBasis<R>> gb;  // basis of the central Jacobian ideal
  MultiPoly<R> g;
  int sorder;  // M
  typename MultiPoly<Jet<R>>::Ring jpring;
  MultiPoly<Jet<R>> f_s;
  std::vector<MultiPoly<Jet<R>>> jacobian_s;
};

template <class R>
Family<R> make_family(QHSingularity<R> base, std::shared_ptr<GroebnerBasis<R>> gb,
                      MultiPoly<R> g, int sorder) {
  const auto ring = base.f.ring();
  if (!(g.ring() == ring))
    fail(errc::type_mismatch, "deformation direction in wrong ring");
  if (sorder < 1) fail(errc::unsupported, "jet order must be positive");
  const Rational one_q = Rational::one({});
  if (!g.is_zero() && one_q < g.weighted_degree(base.weights))
    fail(errc::unsupported,
         "deformation direction has weighted degree above 1");

  typename Jet<R>::Ring jring{ring.base, sorder};
  typename MultiPoly<Jet<R>>::Ring jpr{jring, ring.nvars, ring.names};

  MultiPoly<Jet<R>> fs = constant_jet_poly<R>(base.f, jpr);
  add_jet_layer(fs, 1, g);

  std::vector<MultiPoly<Jet<R>>> jac;
  for (int i = 0; i < ring.nvars; ++i) jac.push_back(fs.derivative(i));

  return Family<R>{std::move(base), std::move(gb), std::move(g),
                   sorder,          jpr,           std::move(fs),
                   std::move(jac)};
}

template <class R>
struct FamilyDivisionResult {
  MultiPoly<Jet<R>> remainder;                 // staircase monomials only
  std::vector<MultiPoly<Jet<R>>> cofactors;    // against d_i f_s
};

// Division by the family Jacobian ideal, exact modulo s^M. Layer k is
// divided by the central ideal; the cofactor error against s d_i g is
// pushed into layer k+1, so the identity
//   h == sum_i cofactors[i] * (d_i f + s d_i g) + remainder
// holds on the nose in (R[s]/(s^M))[x].
template <class R>
FamilyDivisionResult<R> family_division(const Family<R>& fam,
                                        const MultiPoly<Jet<R>>& h) {
  if (!(h.ring() == fam.jpring))
    fail(errc::type_mismatch, "family division: dividend in wrong ring");
  const auto ring = fam.base.f.ring();
  const int n = ring.nvars;
  const int M = fam.sorder;

  std::vector<MultiPoly<R>> dg;
  for (int i = 0; i < n; ++i) dg.push_back(fam.g.derivative(i));

  std::vector<MultiPoly<R>> layer;
  for (int k = 0; k < M; ++k) layer.push_back(jet_layer<R>(h, k, ring));

  MultiPoly<Jet<R>> rem = MultiPoly<Jet<R>>::zero(fam.jpring);
  std::vector<MultiPoly<Jet<R>>> cof(n, MultiPoly<Jet<R>>::zero(fam.jpring));

  for (int k = 0; k < M; ++k) {
    DivisionResult<R> d = fam.gb->divide(layer[static_cast<size_t>(k)]);
    add_jet_layer(rem, k, d.remainder);
    for (int i = 0; i < n; ++i) {
      add_jet_layer(cof[static_cast<size_t>(i)], k,
                    d.cofactors[static_cast<size_t>(i)]);
      if (k + 1 < M)
        layer[static_cast<size_t>(k + 1)] =
            layer[static_cast<size_t>(k + 1)] -
            d.cofactors[static_cast<size_t>(i)] * dg[static_cast<size_t>(i)];
    }
  }
  return FamilyDivisionResult<R>{std::move(rem), std::move(cof)};
}

}  // namespace wittres
