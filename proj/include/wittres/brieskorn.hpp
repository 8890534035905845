#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "jet.hpp"
#include "milnor.hpp"
#include "multipoly.hpp"
#include "series.hpp"
#include "singularity.hpp"

namespace wittres {

inline long rational_floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.numerator().get_mpz_t(),
             q.denominator().get_mpz_t());
  if (!r.fits_slong_p()) fail(errc::unsupported, "degree bound overflow");
  return r.get_si();
}

// coordinates of a polynomial supported on the staircase
template <class C>
std::vector<C> staircase_coords(const MultiPoly<C>& nf,
                                const std::vector<Monomial>& basis,
                                const typename C::Ring& cring) {
  std::vector<C> out(basis.size(), C::zero(cring));
  for (const auto& [mono, c] : nf.terms()) {
    auto it = std::find(basis.begin(), basis.end(), mono);
    require_internal(it != basis.end(), "normal form left the staircase");
    out[static_cast<size_t>(it - basis.begin())] = c;
  }
  return out;
}

// Sections of the lattice in the frame [phi_i dx], phi_i the Milnor basis
// monomials; coordinates are truncated series in t. The rewriting move is
//   (sum_i a_i d_i f) dx == -t (sum_i d_i a_i) dx,
// applied until the polynomial part is exhausted. For isobaric input each
// round lowers the weighted degree by exactly 1, and the round counter is
// capped by a bound computed from the degree so a broken ideal cannot loop.

template <class R>
class BrieskornContext {
 public:
  using Elt = std::vector<Series<R>>;
  using Matrix = std::vector<std::vector<Series<R>>>;

  explicit BrieskornContext(MilnorAlgebra<R> mil) : mil_(std::move(mil)) {
    const auto& w = mil_.singularity().weights;
    for (const auto& m : mil_.basis())
      alpha_.push_back(mil_.singularity().weight_sum +
                       MilnorAlgebra<R>::weight_of(w, m));
  }

  const MilnorAlgebra<R>& milnor() const { return mil_; }
  size_t mu() const { return mil_.mu(); }
  const std::vector<Rational>& exponents() const { return alpha_; }
  typename R::Ring coeff_ring() const {
    return mil_.singularity().f.ring().base;
  }

  Elt zero_element(long torder) const {
    return Elt(mu(), Series<R>::zero(coeff_ring(), torder));
  }

  Elt basis_element(size_t i, long torder) const {
    Elt e = zero_element(torder);
    e[i] = Series<R>::constant(R::one(coeff_ring()), torder);
    return e;
  }

  // [g dx] as a lattice section, exact up to the stated order.
  Elt reduce_form(const MultiPoly<R>& g, long torder) const {
    if (!(g.ring() == mil_.singularity().f.ring()))
      fail(errc::type_mismatch, "form lives in the wrong polynomial ring");
    Elt out = zero_element(torder);
    MultiPoly<R> cur = g;
    const long cap = round_bound(g);
    long k = 0;
    while (!cur.is_zero()) {
      require_internal(k <= cap, "form rewriting exceeded its round bound");
      auto d = mil_.groebner().divide(cur);
      auto co = staircase_coords<R>(d.remainder, mil_.basis(), coeff_ring());
      for (size_t i = 0; i < out.size(); ++i)
        if (!co[i].is_zero())
          out[i] = out[i] + Series<R>::monomial(co[i], k, torder);
      MultiPoly<R> next = MultiPoly<R>::zero(g.ring());
      for (size_t i = 0; i < d.cofactors.size(); ++i)
        next = next - d.cofactors[i].derivative(static_cast<int>(i));
      cur = std::move(next);
      ++k;
    }
    return out;
  }

  // covariant derivative along t d/dt: theta - t^{-1} (multiplication by f)
  Elt nabla_tdt(const Elt& v) const {
    check_elt(v);
    Elt out(v.size(), Series<R>::zero(coeff_ring(), 0));
    const long rf = rf_order(v);
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].theta();
    for (size_t j = 0; j < v.size(); ++j) {
      Elt fj = reduce_form(mil_.singularity().f * mil_.basis_poly(j), rf);
      for (size_t i = 0; i < v.size(); ++i)
        out[i] = out[i] - (v[j] * fj[i]).shift(-1);
    }
    return out;
  }

  Elt scale_by(const Series<R>& a, const Elt& v) const {
    Elt out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(a * c);
    return out;
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
  }

  // K(e_i, e_j) for quasi-homogeneous f: the residue pairing, constant in t.
  Matrix pairing_basis(long torder) const {
    auto res = mil_.residue_pairing();
    Matrix k(mu(), std::vector<Series<R>>(mu(),
                                          Series<R>::zero(coeff_ring(), torder)));
    for (size_t i = 0; i < mu(); ++i)
      for (size_t j = 0; j < mu(); ++j)
        k[i][j] = Series<R>::constant(res[i][j], torder);
    return k;
  }

  // K(u, v) = sum_{ij} u_i(t) v_j(-t) K_ij(t). Coefficients outside the
  // resulting window raise PrecisionLoss on access.
  Series<R> pairing_eval(const Matrix& k, const Elt& u, const Elt& v) const {
    check_elt(u);
    check_elt(v);
    Series<R> acc = Series<R>::zero(coeff_ring(), kBigOrder);
    for (size_t i = 0; i < u.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j)
        acc = acc + u[i] * v[j].conjugate() * k[i][j];
    return acc;
  }

  static constexpr long kBigOrder = 1L << 40;

 private:
  void check_elt(const Elt& v) const {
    if (v.size() != mu())
      fail(errc::type_mismatch, "section has the wrong number of coordinates");
  }

  long rf_order(const Elt& v) const {
    long n = 1, lo = 0;
    for (const auto& c : v) {
      n = std::max(n, c.order() + 1);
      lo = std::min(lo, c.lower());
    }
    return n - lo;
  }

  long round_bound(const MultiPoly<R>& g) const {
    if (g.is_zero()) return 0;
    const auto& w = mil_.singularity().weights;
    Rational wmin = w[0], wmax = w[0];
    for (const auto& wi : w) {
      if (wi < wmin) wmin = wi;
      if (wmax < wi) wmax = wi;
    }
    // each round drops the weighted degree by at least 1 - wmax + wmin
    const Rational drop = Rational(1) - wmax + wmin;
    return rational_floor(g.weighted_degree(w) / drop) + 3;
  }

  MilnorAlgebra<R> mil_;
  std::vector<Rational> alpha_;
};

// Family version: coordinates are series whose coefficients are s-jets.
// The frame is still the central Milnor basis; division is by the family
// Jacobian ideal, exact modulo s^M.

template <class R>
class FamilyBrieskorn {
 public:
  using JR = Jet<R>;
  using Elt = std::vector<Series<JR>>;
  using Matrix = std::vector<std::vector<Series<JR>>>;
  using LevelMatrix = std::vector<std::vector<Series<R>>>;

  FamilyBrieskorn(Family<R> fam, MilnorAlgebra<R> central)
      : fam_(std::move(fam)), central_(std::move(central)) {}

  const Family<R>& family() const { return fam_; }
  const MilnorAlgebra<R>& central() const { return central_; }
  size_t mu() const { return central_.mu(); }
  int sorder() const { return fam_.sorder; }
  const typename JR::Ring& jet_ring() const { return fam_.jpring.base; }

  Elt zero_element(long torder) const {
    return Elt(mu(), Series<JR>::zero(jet_ring(), torder));
  }

  Elt basis_element(size_t i, long torder) const {
    Elt e = zero_element(torder);
    e[i] = Series<JR>::constant(JR::one(jet_ring()), torder);
    return e;
  }

  Elt reduce_form(const MultiPoly<JR>& g, long torder) const {
    if (!(g.ring() == fam_.jpring))
      fail(errc::type_mismatch, "form lives in the wrong polynomial ring");
    Elt out = zero_element(torder);
    MultiPoly<JR> cur = g;
    const long cap = round_bound(g);
    long k = 0;
    while (!cur.is_zero()) {
      require_internal(k <= cap, "form rewriting exceeded its round bound");
      auto d = family_division(fam_, cur);
      auto co = staircase_coords<JR>(d.remainder, central_.basis(), jet_ring());
      for (size_t i = 0; i < out.size(); ++i)
        if (!co[i].is_zero())
          out[i] = out[i] + Series<JR>::monomial(co[i], k, torder);
      MultiPoly<JR> next = MultiPoly<JR>::zero(fam_.jpring);
      for (size_t i = 0; i < d.cofactors.size(); ++i)
        next = next - d.cofactors[i].derivative(static_cast<int>(i));
      cur = std::move(next);
      ++k;
    }
    return out;
  }

  MultiPoly<JR> jet_basis_poly(size_t j) const {
    return constant_jet_poly<R>(central_.basis_poly(j), fam_.jpring);
  }

  // theta - t^{-1} (multiplication by f_s); the multiplication part may
  // leave the lattice, so coordinates can acquire negative exponents.
  Elt nabla_tdt(const Elt& v) const {
    check_elt(v);
    Elt out(v.size(), Series<JR>::zero(jet_ring(), 0));
    const long rf = rf_order(v);
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].theta();
    for (size_t j = 0; j < v.size(); ++j) {
      Elt fj = reduce_form(fam_.f_s * jet_basis_poly(j), rf);
      for (size_t i = 0; i < v.size(); ++i)
        out[i] = out[i] - (v[j] * fj[i]).shift(-1);
    }
    return out;
  }

  // d/ds + t^{-1} (multiplication by g)
  Elt nabla_s(const Elt& v) const {
    check_elt(v);
    Elt out(v.size(), Series<JR>::zero(jet_ring(), 0));
    const long rf = rf_order(v);
    for (size_t i = 0; i < v.size(); ++i)
      out[i] = v[i].map_coeffs([](const JR& c) { return c.deriv(); });
    const MultiPoly<JR> gj = constant_jet_poly<R>(fam_.g, fam_.jpring);
    for (size_t j = 0; j < v.size(); ++j) {
      Elt gphi = reduce_form(gj * jet_basis_poly(j), rf);
      for (size_t i = 0; i < v.size(); ++i)
        out[i] = out[i] + (v[j] * gphi[i]).shift(-1);
    }
    return out;
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
  }

  Elt scale_by(const Series<JR>& a, const Elt& v) const {
    Elt out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(a * c);
    return out;
  }

  // Flat extension of the residue pairing along s, one t-order spent per
  // s-order: level r has window [0, torder - r). The s-derivative rule
  //   ds K_ij = t^{-1} [ sum_a G_i^a(t) K_aj - sum_b G_j^b(-t) K_ib ],
  // with G the coordinates of [g phi dx], determines each level from the
  // previous ones; the t^{-1} coefficient of the bracket must cancel, which
  // is exactly the pairing staying on the lattice.
  std::vector<LevelMatrix> flat_levels(long torder) const {
    const int M = fam_.sorder;
    if (torder < M)
      fail(errc::precision_loss,
           "t-order " + std::to_string(torder) +
               " cannot hold a jet of depth " + std::to_string(M));
    const auto& ring = central_.singularity().f.ring().base;
    const size_t n = mu();

    // G[r][j][a]: s^r layer of coordinate a of [g phi_j dx]
    const MultiPoly<JR> gj = constant_jet_poly<R>(fam_.g, fam_.jpring);
    std::vector<std::vector<std::vector<Series<R>>>> G(
        static_cast<size_t>(M));
    for (size_t j = 0; j < n; ++j) {
      Elt full = reduce_form(gj * jet_basis_poly(j), torder + 1);
      for (int r = 0; r < M; ++r) {
        if (j == 0)
          G[static_cast<size_t>(r)].resize(n);
        G[static_cast<size_t>(r)][j].resize(n, Series<R>::zero(ring, 0));
        for (size_t a = 0; a < n; ++a)
          G[static_cast<size_t>(r)][j][a] = jet_slice(full[a], r);
      }
    }

    std::vector<LevelMatrix> levels;
    auto res = central_.residue_pairing();
    LevelMatrix k0(n, std::vector<Series<R>>(n, Series<R>::zero(ring, torder)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        k0[i][j] = Series<R>::constant(res[i][j], torder);
    levels.push_back(std::move(k0));

    for (int r = 0; r + 1 < M; ++r) {
      LevelMatrix next(n, std::vector<Series<R>>(n, Series<R>::zero(ring, 0)));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          Series<R> rhs = Series<R>::zero(ring, BrieskornContext<R>::kBigOrder);
          for (int r1 = 0; r1 <= r; ++r1) {
            const auto& g1 = G[static_cast<size_t>(r1)];
            const auto& k2 = levels[static_cast<size_t>(r - r1)];
            for (size_t a = 0; a < n; ++a) {
              rhs = rhs + g1[i][a] * k2[a][j];
              rhs = rhs - g1[j][a].conjugate() * k2[i][a];
            }
          }
          rhs = rhs.shift(-1);
          require_internal(rhs.lower() >= 0,
                           "flat extension left the lattice");
          next[i][j] = rhs.scale(R::from_rational(ring, Rational(1, r + 1)));
        }
      levels.push_back(std::move(next));
    }
    return levels;
  }

  // the levels assembled into jet-coefficient series on a common window
  Matrix flat_pairing(long torder) const {
    auto levels = flat_levels(torder);
    const size_t n = mu();
    long common = levels.back()[0][0].order();
    for (const auto& lv : levels)
      for (const auto& row : lv)
        for (const auto& e : row) common = std::min(common, e.order());
    if (common <= 0)
      fail(errc::precision_loss, "no t-orders left after the flat extension");
    Matrix k(n, std::vector<Series<JR>>(n, Series<JR>::zero(jet_ring(), common)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (long e = 0; e < common; ++e) {
          JR c = JR::zero(jet_ring());
          for (size_t r = 0; r < levels.size(); ++r)
            c.set_coeff(static_cast<int>(r), levels[r][i][j].coeff(e));
          if (!c.is_zero())
            k[i][j] = k[i][j] + Series<JR>::monomial(c, e, common);
        }
    return k;
  }

  Series<JR> pairing_eval(const Matrix& k, const Elt& u, const Elt& v) const {
    check_elt(u);
    check_elt(v);
    Series<JR> acc = Series<JR>::zero(jet_ring(), BrieskornContext<R>::kBigOrder);
    for (size_t i = 0; i < u.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j)
        acc = acc + u[i] * v[j].conjugate() * k[i][j];
    return acc;
  }

  Series<R> jet_slice(const Series<JR>& s, int k) const {
    const auto& ring = central_.singularity().f.ring().base;
    Series<R> out = Series<R>::zero(ring, s.order());
    for (long e = s.lower(); e < s.order(); ++e) {
      const R c = s.coeff(e).coeff(k);
      if (!c.is_zero()) out = out + Series<R>::monomial(c, e, s.order());
    }
    return out;
  }

 private:
  void check_elt(const Elt& v) const {
    if (v.size() != mu())
      fail(errc::type_mismatch, "section has the wrong number of coordinates");
  }

  long rf_order(const Elt& v) const {
    long n = 1, lo = 0;
    for (const auto& c : v) {
      n = std::max(n, c.order() + 1);
      lo = std::min(lo, c.lower());
    }
    return n - lo;
  }

  long round_bound(const MultiPoly<JR>& g) const {
    if (g.is_zero()) return 0;
    const auto& w = central_.singularity().weights;
    Rational wmin = w[0], wmax = w[0];
    for (const auto& wi : w) {
      if (wi < wmin) wmin = wi;
      if (wmax < wi) wmax = wi;
    }
    const Rational drop = Rational(1) - wmax + wmin;
    return rational_floor(g.weighted_degree(w) / drop) + 3;
  }

  Family<R> fam_;
  MilnorAlgebra<R> central_;
};

// truncate both to the shared order and compare
template <class R>
bool series_agree(const Series<R>& a, const Series<R>& b) {
  const long n = std::min(a.order(), b.order());
  return a.truncate(n) == b.truncate(n);
}

struct AxiomCheck {
  std::string name;
  bool pass;
  std::string detail;  // empty when the check passes
};

inline bool all_pass(const std::vector<AxiomCheck>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

namespace detail {

template <class R>
Series<R> random_series(std::mt19937_64& rng, const typename R::Ring& ring,
                        long lo, long order) {
  std::uniform_int_distribution<int> dc(-4, 4);
  Series<R> s = Series<R>::zero(ring, order);
  for (long e = lo; e < order; ++e) {
    const int c = dc(rng);
    if (c != 0)
      s = s + Series<R>::monomial(R::from_rational(ring, Rational(c)), e, order);
  }
  return s;
}

template <class Ctx>
typename Ctx::Elt random_element(const Ctx& ctx, std::mt19937_64& rng,
                                 long torder) {
  using S = typename Ctx::Elt::value_type;
  typename Ctx::Elt v = ctx.zero_element(torder);
  for (auto& c : v)
    c = random_series<typename S::Coeff>(rng, c.ring(), 0, torder);
  return v;
}

// jets with all slots filled, so the s-dependence is exercised
template <class R>
Series<Jet<R>> random_jet_series(std::mt19937_64& rng,
                                 const typename Jet<R>::Ring& jring, long lo,
                                 long order) {
  std::uniform_int_distribution<int> dc(-3, 3);
  Series<Jet<R>> s = Series<Jet<R>>::zero(jring, order);
  for (long e = lo; e < order; ++e) {
    Jet<R> c = Jet<R>::zero(jring);
    for (int k = 0; k < jring.order; ++k)
      c.set_coeff(k, R::from_rational(jring.base, Rational(dc(rng))));
    if (!c.is_zero())
      s = s + Series<Jet<R>>::monomial(c, e, order);
  }
  return s;
}

template <class R>
typename FamilyBrieskorn<R>::Elt random_family_element(
    const FamilyBrieskorn<R>& fb, std::mt19937_64& rng, long torder) {
  typename FamilyBrieskorn<R>::Elt v = fb.zero_element(torder);
  for (auto& c : v) c = random_jet_series<R>(rng, fb.jet_ring(), 0, torder);
  return v;
}

}  // namespace detail

// The five defining properties, checked on random sections with exact
// arithmetic. Checks 1, 2, 4, 5 apply to the quasi-homogeneous fiber;
// check 3 needs a family (see verify_family_axioms).
template <class R>
std::vector<AxiomCheck> verify_central_axioms(const BrieskornContext<R>& ctx,
                                              long torder, int trials,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& ring = ctx.coeff_ring();
  auto K = ctx.pairing_basis(torder + 2);
  std::vector<AxiomCheck> out;

  auto run = [&](const std::string& name, auto body) {
    std::string detail;
    bool pass = true;
    for (int t = 0; t < trials && pass; ++t)
      if (!body(t, detail)) pass = false;
    out.push_back(AxiomCheck{name, pass, pass ? "" : detail});
  };

  run("conjugate symmetry", [&](int t, std::string& why) {
    auto u = detail::random_element(ctx, rng, torder);
    auto v = detail::random_element(ctx, rng, torder);
    auto lhs = ctx.pairing_eval(K, u, v);
    auto rhs = ctx.pairing_eval(K, v, u).conjugate();
    if (series_agree(lhs, rhs)) return true;
    why = "K(u,v) != conj K(v,u) at trial " + std::to_string(t) + ": " +
          lhs.str() + " vs " + rhs.str();
    return false;
  });

  run("sesquilinearity", [&](int t, std::string& why) {
    auto u = detail::random_element(ctx, rng, torder);
    auto v = detail::random_element(ctx, rng, torder);
    auto a = detail::random_series<R>(rng, ring, -2, torder - 2);
    auto kuv = ctx.pairing_eval(K, u, v);
    auto left = ctx.pairing_eval(K, ctx.scale_by(a, u), v);
    if (!series_agree(left, a * kuv)) {
      why = "K(a u, v) != a K(u,v) at trial " + std::to_string(t);
      return false;
    }
    auto right = ctx.pairing_eval(K, u, ctx.scale_by(a, v));
    if (!series_agree(right, a.conjugate() * kuv)) {
      why = "K(u, a v) != conj(a) K(u,v) at trial " + std::to_string(t);
      return false;
    }
    return true;
  });

  run("derivation along t d/dt", [&](int t, std::string& why) {
    auto u = detail::random_element(ctx, rng, torder);
    auto v = detail::random_element(ctx, rng, torder);
    const long nvars = ctx.milnor().singularity().f.ring().nvars;
    auto kuv = ctx.pairing_eval(K, u, v);
    auto lhs = kuv.theta() + kuv.scale(R::from_rational(ring, Rational(nvars)));
    auto rhs = ctx.pairing_eval(K, ctx.nabla_tdt(u), v) +
               ctx.pairing_eval(K, u, ctx.nabla_tdt(v));
    if (series_agree(lhs, rhs)) return true;
    why = "(t d/dt + n) K(u,v) != K(Du,v) + K(u,Dv) at trial " +
          std::to_string(t) + ": " + lhs.str() + " vs " + rhs.str();
    return false;
  });

  run("reduction mod t is the residue pairing", [&](int, std::string& why) {
    auto res = ctx.milnor().residue_pairing();
    for (size_t i = 0; i < ctx.mu(); ++i)
      for (size_t j = 0; j < ctx.mu(); ++j)
        if (!(K[i][j].coeff(0) == res[i][j])) {
          why = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
          return false;
        }
    return true;
  });

  return out;
}

// jets compared through slot jorder-1 only; one s-derivative is applied on
// each side of check 3, so the top jet slot carries no information.
template <class R>
bool jet_series_agree(const FamilyBrieskorn<R>& fb, const Series<Jet<R>>& a,
                      const Series<Jet<R>>& b, int jorder) {
  for (int k = 0; k < jorder; ++k)
    if (!series_agree(fb.jet_slice(a, k), fb.jet_slice(b, k))) return false;
  return true;
}

template <class R>
std::vector<AxiomCheck> verify_family_axioms(const FamilyBrieskorn<R>& fb,
                                             long torder, int trials,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int M = fb.sorder();
  auto K = fb.flat_pairing(torder + 2);
  std::vector<AxiomCheck> out;

  auto run = [&](const std::string& name, auto body) {
    std::string detail;
    bool pass = true;
    for (int t = 0; t < trials && pass; ++t)
      if (!body(t, detail)) pass = false;
    out.push_back(AxiomCheck{name, pass, pass ? "" : detail});
  };

  run("conjugate symmetry", [&](int t, std::string& why) {
    auto u = detail::random_family_element<R>(fb, rng, torder);
    auto v = detail::random_family_element<R>(fb, rng, torder);
    auto lhs = fb.pairing_eval(K, u, v);
    auto rhs = fb.pairing_eval(K, v, u).conjugate();
    if (jet_series_agree(fb, lhs, rhs, M)) return true;
    why = "K(u,v) != conj K(v,u) at trial " + std::to_string(t);
    return false;
  });

  run("sesquilinearity", [&](int t, std::string& why) {
    auto u = detail::random_family_element<R>(fb, rng, torder);
    auto v = detail::random_family_element<R>(fb, rng, torder);
    auto a = detail::random_jet_series<R>(rng, fb.jet_ring(), -2, torder - 2);
    auto kuv = fb.pairing_eval(K, u, v);
    if (!jet_series_agree(fb, fb.pairing_eval(K, fb.scale_by(a, u), v),
                          a * kuv, M)) {
      why = "K(a u, v) != a K(u,v) at trial " + std::to_string(t);
      return false;
    }
    if (!jet_series_agree(fb, fb.pairing_eval(K, u, fb.scale_by(a, v)),
                          a.conjugate() * kuv, M)) {
      why = "K(u, a v) != conj(a) K(u,v) at trial " + std::to_string(t);
      return false;
    }
    return true;
  });

  run("derivation along s", [&](int t, std::string& why) {
    auto u = detail::random_family_element<R>(fb, rng, torder);
    auto v = detail::random_family_element<R>(fb, rng, torder);
    auto kuv = fb.pairing_eval(K, u, v);
    auto lhs = kuv.map_coeffs([](const Jet<R>& c) { return c.deriv(); });
    auto rhs = fb.pairing_eval(K, fb.nabla_s(u), v) +
               fb.pairing_eval(K, u, fb.nabla_s(v));
    if (jet_series_agree(fb, lhs, rhs, M - 1)) return true;
    why = "d/ds K(u,v) != K(Du,v) + K(u,Dv) at trial " + std::to_string(t);
    return false;
  });

  run("flatness of the connection", [&](int t, std::string& why) {
    auto v = detail::random_family_element<R>(fb, rng, torder);
    auto ab = fb.nabla_tdt(fb.nabla_s(v));
    auto ba = fb.nabla_s(fb.nabla_tdt(v));
    for (size_t i = 0; i < v.size(); ++i)
      if (!jet_series_agree(fb, ab[i], ba[i], M - 1)) {
        why = "commutator acts on coordinate " + std::to_string(i) +
              " at trial " + std::to_string(t);
        return false;
      }
    return true;
  });

  run("mod t and mod s is the residue pairing", [&](int, std::string& why) {
    auto res = fb.central().residue_pairing();
    for (size_t i = 0; i < fb.mu(); ++i)
      for (size_t j = 0; j < fb.mu(); ++j)
        if (!(K[i][j].coeff(0).coeff(0) == res[i][j])) {
          why = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
          return false;
        }
    return true;
  });

  return out;
}

}  // namespace wittres
