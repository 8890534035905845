#pragma once

/*
 * Sparse multivariate polynomials over a coefficient ring R.
 *
 * Terms live in a map keyed by exponent vector (plain lex on the vector), so
 * the canonical form is unique: no zero coefficients, deterministic term
 * order. Leading terms with respect to a weighted monomial order are found
 * by scan; polynomial sizes in this library make that the right trade.
 *
 * Monomial orders compare weighted degree first (exact rational weights),
 * then break ties with graded lex or graded reverse lex. Both tie-breaks
 * are total orders, so division and basis computations are deterministic.
 */

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "modring.hpp"
#include "rational.hpp"

namespace wittres {

using Monomial = std::vector<unsigned>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool mono_divides(const Monomial& d, const Monomial& m) {
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

inline Monomial mono_quotient(const Monomial& m, const Monomial& d) {
    Monomial r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = m[i] - d[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline unsigned long mono_total_degree(const Monomial& m) {
    unsigned long d = 0;
    for (unsigned e : m) d += e;
    return d;
}

inline bool mono_is_coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

enum class TieBreak { grevlex, grlex };

struct MonomialOrder {
    std::vector<Rational> weights; // positive, one per variable
    TieBreak tie = TieBreak::grevlex;

    Rational weighted_degree(const Monomial& m) const {
        Rational d(0);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) d += weights[i] * Rational(static_cast<long>(m[i]));
        return d;
    }

    // Strict total order; returns true when a is smaller.
    bool less(const Monomial& a, const Monomial& b) const {
        Rational da = weighted_degree(a), db = weighted_degree(b);
        if (da != db) return da < db;
        unsigned long ta = mono_total_degree(a), tb = mono_total_degree(b);
        if (ta != tb) return ta < tb;
        if (tie == TieBreak::grlex) {
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i];
            return false;
        }
        // grevlex: smaller exponent in the last differing slot wins
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

template <class R>
struct PolyRingT {
    typename R::Ring base;
    int nvars = 0;
    std::vector<std::string> names; // presentation only

    // Names do not participate in compatibility.
    bool operator==(const PolyRingT& o) const { return base == o.base && nvars == o.nvars; }
    bool operator!=(const PolyRingT& o) const { return !(*this == o); }
};

template <class R>
class MultiPoly {
public:
    using Ring = PolyRingT<R>;
    using TermMap = std::map<Monomial, R>;

    MultiPoly() = default;
    explicit MultiPoly(Ring r) : ring_(std::move(r)) {}

    static Ring make_ring(typename R::Ring base, std::vector<std::string> names) {
        Ring r;
        r.base = std::move(base);
        r.nvars = static_cast<int>(names.size());
        r.names = std::move(names);
        return r;
    }

    Ring ring() const { return ring_; }
    int nvars() const { return ring_.nvars; }

    static MultiPoly zero(Ring r) { return MultiPoly(std::move(r)); }
    static MultiPoly one(Ring r) {
        MultiPoly p(std::move(r));
        p.add_term(Monomial(p.ring_.nvars, 0), R::one(p.ring_.base));
        return p;
    }
    static MultiPoly from_rational(Ring r, const Rational& q) {
        MultiPoly p(std::move(r));
        p.add_term(Monomial(p.ring_.nvars, 0), R::from_rational(p.ring_.base, q));
        return p;
    }
    static MultiPoly constant(Ring r, const R& c) {
        MultiPoly p(std::move(r));
        p.add_term(Monomial(p.ring_.nvars, 0), c);
        return p;
    }
    static MultiPoly variable(Ring r, int i, unsigned e = 1) {
        MultiPoly p(std::move(r));
        Monomial m(p.ring_.nvars, 0);
        m[static_cast<size_t>(i)] = e;
        p.add_term(m, R::one(p.ring_.base));
        return p;
    }
    static MultiPoly term(Ring r, const Monomial& m, const R& c) {
        MultiPoly p(std::move(r));
        p.add_term(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty()
            || (terms_.size() == 1 && mono_total_degree(terms_.begin()->first) == 0);
    }
    bool is_unit() const { return is_constant() && !terms_.empty() && terms_.begin()->second.is_unit(); }
    MultiPoly inverse() const {
        if (!is_unit()) fail(errc::not_invertible, "polynomial is not a unit");
        return constant(ring_, terms_.begin()->second.inverse());
    }
    size_t term_count() const { return terms_.size(); }

    R coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? R::zero(ring_.base) : it->second;
    }
    R constant_coeff() const { return coeff(Monomial(static_cast<size_t>(ring_.nvars), 0)); }

    void add_term(const Monomial& m, const R& c) {
        if (c.is_zero()) return;
        if (static_cast<int>(m.size()) != ring_.nvars)
            fail(errc::type_mismatch, "exponent vector length mismatch");
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a.ring_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }

    MultiPoly scale(const R& c) const {
        MultiPoly r(ring_);
        for (const auto& [m, x] : terms_) r.add_term(m, c * x);
        return r;
    }
    MultiPoly mul_term(const Monomial& m, const R& c) const {
        MultiPoly r(ring_);
        if (c.is_zero()) return r;
        for (const auto& [mm, x] : terms_) r.add_term(mono_mul(mm, m), c * x);
        return r;
    }

    MultiPoly pow(unsigned long e) const {
        MultiPoly r = one(ring_);
        MultiPoly b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e > 0) b = b * b;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(int var) const {
        MultiPoly r(ring_);
        size_t v = static_cast<size_t>(var);
        for (const auto& [m, c] : terms_) {
            if (m[v] == 0) continue;
            Monomial d = m;
            d[v] -= 1;
            r.add_term(d, R::from_rational(ring_.base, Rational(static_cast<long>(m[v]))) * c);
        }
        return r;
    }

    // Largest monomial under the given order; polynomial must be nonzero.
    std::pair<Monomial, R> leading_term(const MonomialOrder& ord) const {
        require_internal(!terms_.empty(), "leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

    Rational weighted_degree(const std::vector<Rational>& w) const {
        require_internal(!terms_.empty(), "weighted degree of zero polynomial");
        MonomialOrder ord{w, TieBreak::grevlex};
        Rational best = ord.weighted_degree(terms_.begin()->first);
        for (const auto& [m, c] : terms_) {
            Rational d = ord.weighted_degree(m);
            if (d > best) best = d;
        }
        return best;
    }

    // Substitutes values for variables; conv maps coefficients into A.
    template <class A, class Conv>
    A eval_with(const std::vector<A>& at, const typename A::Ring& ar, Conv conv) const {
        require_internal(at.size() == static_cast<size_t>(ring_.nvars), "evaluation arity");
        A acc = A::zero(ar);
        for (const auto& [m, c] : terms_) {
            A t = conv(c);
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) t = t * at[i].pow(m[i]);
            acc = acc + t;
        }
        return acc;
    }

    template <class S, class Conv>
    MultiPoly<S> map_coefficients(typename MultiPoly<S>::Ring target, Conv conv) const {
        MultiPoly<S> r(std::move(target));
        for (const auto& [m, c] : terms_) r.add_term(m, conv(c));
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        // print descending so constants come last
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            const auto& [m, c] = *it;
            std::string mono;
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_.names[i];
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            std::string cs = c.str();
            if (mono.empty()) out += cs;
            else if (cs == "1") out += mono;
            else out += cs + "*" + mono;
        }
        return out;
    }

private:
    void check(const MultiPoly& o) const {
        if (ring_ != o.ring_) fail(errc::type_mismatch, "polynomials over different rings");
    }

    Ring ring_;
    TermMap terms_;
};

using QPoly = MultiPoly<Rational>;
using ZpmPoly = MultiPoly<Zpm>;

} // namespace wittres
