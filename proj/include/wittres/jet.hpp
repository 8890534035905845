#pragma once

/*
 * R[s]/(s^M): polynomials in a deformation parameter s, nilpotent of order M.
 *
 * Unlike a truncated power series there is no precision window here: s^M = 0
 * is an exact ring relation, so arithmetic is exact. The ring is local over a
 * local (or field) base: a jet is a unit iff its constant term is.
 *
 * deriv() is the formal d/ds on the degree-< M representative. The s^(M-1)
 * coefficient of a derivative is genuinely determined (it comes from the s^M
 * coefficient of nothing: it is zero by choice of representative), so
 * identities involving one derivative are only meaningful through s^(M-2).
 */

#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace wittres {

template <class R>
struct JetRingT {
    typename R::Ring base;
    int order = 1; // M, exponent at which s vanishes

    bool operator==(const JetRingT& o) const { return base == o.base && order == o.order; }
    bool operator!=(const JetRingT& o) const { return !(*this == o); }
};

template <class R>
class Jet {
public:
    using Ring = JetRingT<R>;

    Jet() = default;
    explicit Jet(Ring r) : ring_(std::move(r)), c_(static_cast<size_t>(ring_.order), R::zero(ring_.base)) {
        if (ring_.order < 1) fail(errc::unsupported, "jet order must be >= 1");
    }
    Jet(Ring r, const R& constant) : Jet(std::move(r)) { c_[0] = constant; }

    Ring ring() const { return ring_; }
    static Jet zero(Ring r) { return Jet(std::move(r)); }
    static Jet one(Ring r) { auto b = r.base; return Jet(std::move(r), R::one(b)); }
    static Jet from_rational(Ring r, const Rational& q) {
        auto b = r.base;
        return Jet(std::move(r), R::from_rational(b, q));
    }

    int order() const { return ring_.order; }
    const R& coeff(int k) const {
        if (k < 0 || k >= ring_.order) fail(errc::unsupported, "jet coefficient index out of range");
        return c_[static_cast<size_t>(k)];
    }
    void set_coeff(int k, const R& v) {
        if (k < 0 || k >= ring_.order) fail(errc::unsupported, "jet coefficient index out of range");
        c_[static_cast<size_t>(k)] = v;
    }

    bool is_zero() const {
        for (const auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }
    bool is_unit() const { return c_[0].is_unit(); }

    Jet operator-() const {
        Jet r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Jet& operator+=(const Jet& o) {
        check(o);
        for (int k = 0; k < ring_.order; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        check(o);
        for (int k = 0; k < ring_.order; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check(b);
        Jet r(a.ring_);
        for (int i = 0; i < a.ring_.order; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; i + j < a.ring_.order; ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend bool operator==(const Jet& a, const Jet& b) { return a.ring_ == b.ring_ && a.c_ == b.c_; }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    Jet inverse() const {
        if (!is_unit()) fail(errc::not_invertible, "jet with non-unit constant term");
        // (c0 + n)^-1 = c0^-1 * sum (-n/c0)^k, n nilpotent
        R c0inv = c_[0].inverse();
        Jet n = *this;
        n.c_[0] = R::zero(ring_.base);
        Jet term = Jet::one(ring_);
        Jet acc = term;
        for (int k = 1; k < ring_.order; ++k) {
            term = term * n;
            for (auto& x : term.c_) x = x * c0inv;
            for (auto& x : term.c_) x = -x;
            acc += term;
        }
        for (auto& x : acc.c_) x = x * c0inv;
        return acc;
    }

    Jet pow(unsigned long e) const {
        Jet r = Jet::one(ring_);
        Jet b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Formal d/ds on the degree-< M representative.
    Jet deriv() const {
        Jet r(ring_);
        for (int k = 1; k < ring_.order; ++k)
            r.c_[k - 1] = R::from_rational(ring_.base, Rational(k)) * c_[k];
        return r;
    }

    std::string str(const std::string& var = "s") const {
        std::string out;
        for (int k = 0; k < ring_.order; ++k) {
            if (c_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += c_[k].str();
            if (k >= 1) out += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
        }
        return out.empty() ? "0" : out;
    }

private:
    void check(const Jet& o) const {
        if (ring_ != o.ring_) fail(errc::type_mismatch, "jets over different rings");
    }

    Ring ring_;
    std::vector<R> c_;
};

using QJet = Jet<Rational>;

} // namespace wittres
