#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "multipoly.hpp"

namespace wittres {

// Buchberger with cofactor tracking. Every basis element stores an exact
// expression of itself as a combination of the *original* generators, so
// division by the basis yields cofactors against the generators the caller
// handed in. All basis elements are kept monic; over Z/p^m this forces every
// leading coefficient met during the run to be a unit, and a non-unit raises
// DenominatorNotInvertible instead of silently producing a wrong basis.

template <class R>
struct GroebnerEntry {
  MultiPoly<R> g;                   // monic
  std::vector<MultiPoly<R>> cof;    // g == sum_i cof[i] * gen[i]
};

template <class R>
struct DivisionResult {
  MultiPoly<R> remainder;           // no term divisible by any basis lt
  std::vector<MultiPoly<R>> cofactors;  // against the original generators
};

template <class R>
class GroebnerBasis {
 public:
  using Poly = MultiPoly<R>;
  using Ring = typename Poly::Ring;

  GroebnerBasis(std::vector<Poly> gens, MonomialOrder ord)
      : ord_(std::move(ord)) {
    if (gens.empty()) fail(errc::unsupported, "groebner: no generators");
    ring_ = gens.front().ring();
    for (const auto& g : gens)
      if (!(g.ring() == ring_))
        fail(errc::type_mismatch, "groebner: generators in different rings");
    if (ord_.weights.size() != static_cast<size_t>(ring_.nvars))
      fail(errc::type_mismatch, "groebner: order arity mismatch");
    ngens_ = gens.size();
    gens_ = gens;
    for (size_t i = 0; i < gens.size(); ++i) {
      std::vector<Poly> cof(ngens_, Poly::zero(ring_));
      cof[i] = Poly::one(ring_);
      insert_reduced(gens[i], std::move(cof));
    }
    saturate();
    interreduce();
    std::sort(entries_.begin(), entries_.end(),
              [&](const GroebnerEntry<R>& a, const GroebnerEntry<R>& b) {
                return ord_.less(a.g.leading_term(ord_).first,
                                 b.g.leading_term(ord_).first);
              });
  }

  const std::vector<GroebnerEntry<R>>& entries() const { return entries_; }
  const MonomialOrder& order() const { return ord_; }
  const Ring& ring() const { return ring_; }
  size_t generator_count() const { return ngens_; }

  // Division: repeatedly rewrite the largest term divisible by some basis
  // leading monomial (first matching entry wins). Terms that survive are
  // exactly the staircase part of the input.
  DivisionResult<R> divide(const Poly& p) const {
    if (!(p.ring() == ring_))
      fail(errc::type_mismatch, "groebner: dividend in wrong ring");
    Poly work = p;
    Poly rem = Poly::zero(ring_);
    std::vector<Poly> q(entries_.size(), Poly::zero(ring_));
    while (!work.is_zero()) {
      auto [mono, c] = work.leading_term(ord_);
      bool hit = false;
      for (size_t j = 0; j < entries_.size(); ++j) {
        const Monomial lm = entries_[j].g.leading_term(ord_).first;
        if (mono_divides(lm, mono)) {
          const Monomial u = mono_quotient(mono, lm);
          work = work - entries_[j].g.mul_term(u, c);
          q[j].add_term(u, c);
          hit = true;
          break;
        }
      }
      if (!hit) {
        rem.add_term(mono, c);
        work.add_term(mono, -c);
      }
    }
    DivisionResult<R> out{std::move(rem),
                          std::vector<Poly>(ngens_, Poly::zero(ring_))};
    for (size_t j = 0; j < entries_.size(); ++j) {
      if (q[j].is_zero()) continue;
      for (size_t i = 0; i < ngens_; ++i)
        out.cofactors[i] = out.cofactors[i] + q[j] * entries_[j].cof[i];
    }
    return out;
  }

  Poly normal_form(const Poly& p) const { return divide(p).remainder; }

  bool contains_unit() const {
    for (const auto& e : entries_)
      if (mono_total_degree(e.g.leading_term(ord_).first) == 0) return true;
    return false;
  }

  // Finite iff every variable has a pure-power leading monomial.
  bool zero_dimensional() const {
    if (contains_unit()) return true;
    const int n = ring_.nvars;
    for (int v = 0; v < n; ++v)
      if (pure_power_bound(v) < 0) return false;
    return true;
  }

  // Monomials under the staircase, i.e. a module basis of R[x]/ideal.
  // Order of the result: graded by the monomial order, ascending.
  std::vector<Monomial> staircase() const {
    if (contains_unit()) return {};
    const int n = ring_.nvars;
    std::vector<long> bound(n);
    for (int v = 0; v < n; ++v) {
      bound[v] = pure_power_bound(v);
      if (bound[v] < 0)
        fail(errc::not_isolated,
             "ideal is not zero-dimensional: no pure power of variable " +
                 ring_.names[v] + " among leading terms");
    }
    std::vector<Monomial> lts;
    for (const auto& e : entries_) lts.push_back(e.g.leading_term(ord_).first);
    std::vector<Monomial> out;
    Monomial cur(n, 0);
    // odometer over the box prod [0, bound_v)
    for (;;) {
      bool reducible = false;
      for (const auto& lm : lts)
        if (mono_divides(lm, cur)) { reducible = true; break; }
      if (!reducible) out.push_back(cur);
      int v = 0;
      while (v < n) {
        if (++cur[v] < static_cast<unsigned>(bound[v])) break;
        cur[v] = 0;
        ++v;
      }
      if (v == n) break;
    }
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return ord_.less(a, b); });
    return out;
  }

 private:
  long pure_power_bound(int v) const {
    long best = -1;
    for (const auto& e : entries_) {
      const Monomial lm = e.g.leading_term(ord_).first;
      bool pure = true;
      for (size_t k = 0; k < lm.size(); ++k)
        if (lm[k] != 0 && static_cast<int>(k) != v) { pure = false; break; }
      if (pure && lm[v] > 0) {
        if (best < 0 || static_cast<long>(lm[v]) < best)
          best = static_cast<long>(lm[v]);
      }
    }
    return best;
  }

  static void make_monic(Poly& g, std::vector<Poly>& cof,
                         const MonomialOrder& ord) {
    const R lc = g.leading_term(ord).second;
    if (lc.is_one()) return;
    if (!lc.is_unit())
      fail(errc::denominator_not_invertible,
           "groebner: leading coefficient " + lc.str() + " is not a unit");
    const R s = lc.inverse();
    g = g.scale(s);
    for (auto& c : cof) c = c.scale(s);
  }

  // Reduce against the current basis, then insert if nonzero.
  bool insert_reduced(Poly p, std::vector<Poly> cof) {
    while (!p.is_zero()) {
      auto [mono, c] = p.leading_term(ord_);
      bool hit = false;
      for (const auto& e : entries_) {
        const Monomial lm = e.g.leading_term(ord_).first;
        if (mono_divides(lm, mono)) {
          const Monomial u = mono_quotient(mono, lm);
          p = p - e.g.mul_term(u, c);
          for (size_t i = 0; i < ngens_; ++i)
            cof[i] = cof[i] - e.cof[i].mul_term(u, c);
          hit = true;
          break;
        }
      }
      if (!hit) break;  // leading term is irreducible; keep the tail as is
    }
    if (p.is_zero()) return false;
    make_monic(p, cof, ord_);
    const size_t idx = entries_.size();
    entries_.push_back(GroebnerEntry<R>{std::move(p), std::move(cof)});
    for (size_t j = 0; j < idx; ++j) pairs_.insert({j, idx});
    return true;
  }

  void saturate() {
    while (!pairs_.empty()) {
      // normal selection: smallest lcm first, then oldest pair
      auto best = pairs_.begin();
      Monomial best_lcm = pair_lcm(*best);
      for (auto it = std::next(pairs_.begin()); it != pairs_.end(); ++it) {
        Monomial l = pair_lcm(*it);
        if (ord_.less(l, best_lcm)) { best = it; best_lcm = std::move(l); }
      }
      auto [a, b] = *best;
      pairs_.erase(best);
      const Monomial la = entries_[a].g.leading_term(ord_).first;
      const Monomial lb = entries_[b].g.leading_term(ord_).first;
      if (mono_is_coprime(la, lb)) continue;  // first Buchberger criterion
      const Monomial l = mono_lcm(la, lb);
      Poly s = entries_[a].g.mul_term(mono_quotient(l, la), R::one(ring_.base)) -
               entries_[b].g.mul_term(mono_quotient(l, lb), R::one(ring_.base));
      std::vector<Poly> cof(ngens_, Poly::zero(ring_));
      for (size_t i = 0; i < ngens_; ++i)
        cof[i] = entries_[a].cof[i].mul_term(mono_quotient(l, la),
                                             R::one(ring_.base)) -
                 entries_[b].cof[i].mul_term(mono_quotient(l, lb),
                                             R::one(ring_.base));
      insert_reduced(std::move(s), std::move(cof));
    }
  }

  // Reduce every element by the others until stable; drop redundant ones.
  // The result is the reduced basis, canonical for the order.
  void interreduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < entries_.size(); ++i) {
        Poly p = entries_[i].g;
        std::vector<Poly> cof = entries_[i].cof;
        Poly rem = Poly::zero(ring_);
        bool touched = false;
        while (!p.is_zero()) {
          auto [mono, c] = p.leading_term(ord_);
          bool hit = false;
          for (size_t j = 0; j < entries_.size(); ++j) {
            if (j == i) continue;
            const Monomial lm = entries_[j].g.leading_term(ord_).first;
            if (mono_divides(lm, mono)) {
              const Monomial u = mono_quotient(mono, lm);
              p = p - entries_[j].g.mul_term(u, c);
              for (size_t k = 0; k < ngens_; ++k)
                cof[k] = cof[k] - entries_[j].cof[k].mul_term(u, c);
              hit = true;
              touched = true;
              break;
            }
          }
          if (!hit) {
            rem.add_term(mono, c);
            p.add_term(mono, -c);
          }
        }
        if (!touched) continue;
        changed = true;
        if (rem.is_zero()) {
          entries_.erase(entries_.begin() + static_cast<long>(i));
          --i;
        } else {
          make_monic(rem, cof, ord_);
          entries_[i] = GroebnerEntry<R>{std::move(rem), std::move(cof)};
        }
      }
    }
  }

  Monomial pair_lcm(const std::pair<size_t, size_t>& pr) const {
    return mono_lcm(entries_[pr.first].g.leading_term(ord_).first,
                    entries_[pr.second].g.leading_term(ord_).first);
  }

  Ring ring_;
  MonomialOrder ord_;
  size_t ngens_ = 0;
  std::vector<Poly> gens_;
  std::vector<GroebnerEntry<R>> entries_;
  std::set<std::pair<size_t, size_t>> pairs_;
};

}  // namespace wittres
