#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "groebner.hpp"
#include "multipoly.hpp"
#include "rational.hpp"
#include "singularity.hpp"

namespace wittres {

// det by cofactor expansion; entries are polynomials, sizes are tiny (n <= 4).
template <class R>
MultiPoly<R> poly_det(const std::vector<std::vector<MultiPoly<R>>>& a) {
  const size_t n = a.size();
  if (n == 0) fail(errc::unsupported, "empty matrix");
  const auto ring = a[0][0].ring();
  if (n == 1) return a[0][0];
  MultiPoly<R> acc = MultiPoly<R>::zero(ring);
  for (size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly<R>>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly<R>> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly<R> t = a[0][j] * poly_det(minor);
    acc = (j % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

template <class R>
MultiPoly<R> hessian(const MultiPoly<R>& f) {
  const int n = f.ring().nvars;
  std::vector<std::vector<MultiPoly<R>>> h(
      static_cast<size_t>(n),
      std::vector<MultiPoly<R>>(static_cast<size_t>(n),
                                MultiPoly<R>::zero(f.ring())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          f.derivative(i).derivative(j);
  return poly_det(h);
}

// Milnor algebra R[x]/Jac(f) with the residue functional normalized so that
// res(hess f) = mu. The monomial basis is the Groebner staircase sorted by
// weighted degree, ties broken by putting the lexicographically larger
// exponent vector first (so x precedes y within one degree).
//
// res(g) = (coefficient of the socle monomial in NF(g)) * scale,
// scale = mu / c where c is the socle coefficient of NF(hess f).
// Over Z/p^m the caller can pass the scale precomputed at a raised level;
// without an override c must be a unit or DenominatorNotInvertible is raised.

template <class R>
class MilnorAlgebra {
 public:
  using Poly = MultiPoly<R>;

  MilnorAlgebra(QHSingularity<R> sing, std::shared_ptr<GroebnerBasis<R>> gb,
                std::optional<R> scale_override = std::nullopt)
      : sing_(std::move(sing)), gb_(std::move(gb)) {
    basis_ = gb_->staircase();
    if (basis_.empty())
      fail(errc::unsupported, "Jacobian ideal is the unit ideal");
    const auto& w = sing_.weights;
    std::stable_sort(basis_.begin(), basis_.end(),
                     [&](const Monomial& a, const Monomial& b) {
                       const Rational da = weight_of(w, a), db = weight_of(w, b);
                       if (da < db) return true;
                       if (db < da) return false;
                       return std::lexicographical_compare(b.begin(), b.end(),
                                                           a.begin(), a.end());
                     });
    const Rational top = weight_of(w, basis_.back());
    size_t at_top = 0;
    for (const auto& m : basis_)
      if (weight_of(w, m) == top) ++at_top;
    require_internal(at_top == 1, "socle is not one-dimensional");

    const auto ring = sing_.f.ring();
    Poly h = hessian(sing_.f);
    std::vector<R> hc = nf_coordinates(h);
    for (size_t i = 0; i + 1 < hc.size(); ++i)
      require_internal(hc[i].is_zero(),
                       "hessian is not a socle multiple in the Milnor algebra");
    const R c = hc.back();
    const Rational mu_q(static_cast<long>(basis_.size()));
    if (scale_override) {
      scale_ = *scale_override;
      require_internal(c * scale_ == R::from_rational(ring.base, mu_q),
                       "residue scale is inconsistent with the hessian");
    } else {
      if (c.is_zero() || !c.is_unit())
        fail(errc::denominator_not_invertible,
             "hessian socle coefficient " + c.str() +
                 " is not invertible; the residue normalization needs a "
                 "lifted computation");
      scale_ = R::from_rational(ring.base, mu_q) * c.inverse();
    }
  }

  const QHSingularity<R>& singularity() const { return sing_; }
  const GroebnerBasis<R>& groebner() const { return *gb_; }
  std::shared_ptr<GroebnerBasis<R>> groebner_ptr() const { return gb_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  size_t mu() const { return basis_.size(); }
  size_t socle_index() const { return basis_.size() - 1; }
  const Monomial& socle() const { return basis_.back(); }
  const R& residue_scale() const { return scale_; }

  Poly basis_poly(size_t i) const {
    const auto ring = sing_.f.ring();
    return Poly::term(ring, basis_[i], R::one(ring.base));
  }

  // Coordinates of NF(g) in the monomial basis.
  std::vector<R> nf_coordinates(const Poly& g) const {
    const auto ring = sing_.f.ring();
    Poly nf = gb_->normal_form(g);
    std::vector<R> out(basis_.size(), R::zero(ring.base));
    for (const auto& [mono, c] : nf.terms()) {
      auto it = std::find(basis_.begin(), basis_.end(), mono);
      require_internal(it != basis_.end(),
                       "normal form left the staircase");
      out[static_cast<size_t>(it - basis_.begin())] = c;
    }
    return out;
  }

  R residue(const Poly& g) const {
    return nf_coordinates(g).back() * scale_;
  }

  // res(phi_i * phi_j); symmetric, and for weight reasons supported on
  // pairs of complementary degree.
  std::vector<std::vector<R>> residue_pairing() const {
    const auto ring = sing_.f.ring();
    const size_t mu = basis_.size();
    std::vector<std::vector<R>> k(mu,
                                  std::vector<R>(mu, R::zero(ring.base)));
    for (size_t i = 0; i < mu; ++i)
      for (size_t j = i; j < mu; ++j) {
        k[i][j] = residue(basis_poly(i) * basis_poly(j));
        k[j][i] = k[i][j];
      }
    return k;
  }

  static Rational weight_of(const std::vector<Rational>& w, const Monomial& m) {
    Rational d = Rational::zero({});
    for (size_t i = 0; i < m.size(); ++i)
      d = d + w[i] * Rational(static_cast<long>(m[i]));
    return d;
  }

 private:
  QHSingularity<R> sing_;
  std::shared_ptr<GroebnerBasis<R>> gb_;
  std::vector<Monomial> basis_;
  R scale_;
};

// Gaussian elimination determinant; pivots must be units. Returns the det,
// or raises NotInvertible when no unit pivot exists in a nonzero column
// (over Z/p^m that means the determinant is a non-unit).
template <class R>
R matrix_det(std::vector<std::vector<R>> a, const typename R::Ring& ring) {
  const size_t n = a.size();
  R det = R::one(ring);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t r = col; r < n; ++r)
      if (a[r][col].is_unit()) { piv = r; break; }
    if (piv == n) {
      bool all_zero = true;
      for (size_t r = col; r < n; ++r)
        if (!a[r][col].is_zero()) all_zero = false;
      if (all_zero) return R::zero(ring);
      fail(errc::not_invertible, "matrix has no unit pivot");
    }
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    const R inv = a[col][col].inverse();
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const R m = a[r][col] * inv;
      for (size_t c = col; c < n; ++c) a[r][c] = a[r][c] - m * a[col][c];
    }
  }
  return det;
}

// Residue of a monomial on a Brieskorn-Pham sum x_1^{a_1} + ... + x_n^{a_n}:
// the product over i of (1/a_i if k_i == a_i - 2, else 0).
inline Rational bp_residue(const std::vector<unsigned>& a, const Monomial& k) {
  Rational out = Rational::one({});
  for (size_t i = 0; i < a.size(); ++i) {
    if (k[i] != a[i] - 2) return Rational::zero({});
    out = out * Rational(1L, static_cast<long>(a[i]));
  }
  return out;
}

}  // namespace wittres
