#pragma once

/*
 * Truncated Laurent series over a coefficient ring R.
 *
 * A value represents sum c_k t^k known exactly for k in [lo, order):
 * coefficients below lo are exactly zero, coefficients at order and above
 * are unknown. Truncation orders propagate pessimistically:
 *
 *   add:  order = min(Na, Nb)
 *   mul:  order = min(Na + lo_b, Nb + lo_a)
 *
 * so a computed coefficient is never contaminated by unknown ones. All
 * arithmetic is exact in R; nothing rounds.
 *
 * conjugate() is the substitution t -> -t. theta() is t d/dt, the operator
 * scaling c_k by k; the two satisfy theta(conj(a)) = conj(theta(a)) and
 * theta is a derivation.
 */

#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace wittres {

template <class R>
class Series {
public:
    using Ring = typename R::Ring;
    using Coeff = R;

    Series() : lo_(0), order_(0) {}
    // Zero series known through order N.
    Series(Ring r, long order) : ring_(std::move(r)), lo_(order), order_(order) {}

    static Series zero(Ring r, long order) { return Series(std::move(r), order); }
    static Series constant(const R& c, long order) {
        Series s(c.ring(), order);
        if (order <= 0) return s; // window excludes t^0
        s.lo_ = 0;
        s.c_.assign(static_cast<size_t>(order), R::zero(s.ring_));
        s.c_[0] = c;
        s.normalize();
        return s;
    }
    static Series monomial(const R& c, long e, long order) {
        Series s(c.ring(), order);
        if (e >= order) return s;
        s.lo_ = e;
        s.c_.assign(static_cast<size_t>(order - e), R::zero(s.ring_));
        s.c_[0] = c;
        s.normalize();
        return s;
    }

    Ring ring() const { return ring_; }
    long lower() const { return lo_; }
    long order() const { return order_; }
    bool is_zero() const { return c_.empty(); }

    // Coefficient of t^k; k must be below the truncation order.
    R coeff(long k) const {
        if (k >= order_)
            fail(errc::precision_loss, "coefficient t^" + std::to_string(k)
                 + " beyond truncation order " + std::to_string(order_));
        if (k < lo_) return R::zero(ring_);
        return c_[static_cast<size_t>(k - lo_)];
    }

    // Forget coefficients at new_order and above. Cannot extend knowledge.
    Series truncate(long new_order) const {
        if (new_order > order_)
            fail(errc::unsupported, "cannot raise truncation order without recomputing");
        Series r = *this;
        r.order_ = new_order;
        if (r.lo_ > new_order) r.lo_ = new_order;
        r.c_.resize(static_cast<size_t>(r.order_ - r.lo_), R::zero(ring_));
        r.normalize();
        return r;
    }

    // Multiply by t^e. Exact: shifts the window.
    Series shift(long e) const {
        Series r = *this;
        r.lo_ += e;
        r.order_ += e;
        return r;
    }

    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Series operator+(const Series& a, const Series& b) {
        a.check(b);
        long order = std::min(a.order_, b.order_);
        long lo = std::min(std::min(a.lo_, b.lo_), order);
        Series r(a.ring_, order);
        r.lo_ = lo;
        r.c_.assign(static_cast<size_t>(order - lo), R::zero(a.ring_));
        for (long k = lo; k < order; ++k) {
            R v = a.window_coeff(k) + b.window_coeff(k);
            r.c_[static_cast<size_t>(k - lo)] = v;
        }
        r.normalize();
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator*(const Series& a, const Series& b) {
        a.check(b);
        long order = std::min(a.order_ + b.lo_, b.order_ + a.lo_);
        long lo = std::min(a.lo_ + b.lo_, order);
        Series r(a.ring_, order);
        r.lo_ = lo;
        r.c_.assign(static_cast<size_t>(order - lo), R::zero(a.ring_));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                long k = a.lo_ + static_cast<long>(i) + b.lo_ + static_cast<long>(j);
                if (k >= order) break;
                r.c_[static_cast<size_t>(k - lo)] += a.c_[i] * b.c_[j];
            }
        }
        r.normalize();
        return r;
    }

    Series scale(const R& c) const {
        Series r = *this;
        for (auto& x : r.c_) x = c * x;
        r.normalize();
        return r;
    }

    // Same knowledge and same values: equal ring, equal order, equal window.
    friend bool operator==(const Series& a, const Series& b) {
        return a.ring_ == b.ring_ && a.order_ == b.order_ && a.lo_ == b.lo_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // Multiplicative inverse; requires a unit leading coefficient.
    Series inverse() const {
        if (c_.empty())
            fail(errc::not_invertible, "series is zero to its truncation order");
        const R& lead = c_[0];
        if (!lead.is_unit())
            fail(errc::not_invertible, "leading coefficient " + lead.str() + " is not a unit");
        R li = lead.inverse();
        size_t len = c_.size();
        std::vector<R> d(len, R::zero(ring_));
        d[0] = li;
        for (size_t k = 1; k < len; ++k) {
            R acc = R::zero(ring_);
            for (size_t j = 1; j <= k; ++j) acc += c_[j] * d[k - j];
            d[k] = -(li * acc);
        }
        Series r(ring_, order_ - 2 * lo_);
        r.lo_ = -lo_;
        r.c_ = std::move(d);
        r.normalize();
        return r;
    }

    // t -> -t.
    Series conjugate() const {
        Series r = *this;
        for (size_t i = 0; i < r.c_.size(); ++i) {
            long k = r.lo_ + static_cast<long>(i);
            if (k % 2 != 0) r.c_[i] = -r.c_[i];
        }
        return r;
    }

    // Coefficientwise map; fn must be R-linear or the window claim breaks.
    template <class Fn>
    Series map_coeffs(Fn fn) const {
        Series r = *this;
        for (auto& c : r.c_) c = fn(c);
        r.normalize();
        return r;
    }

    // t d/dt: scales c_k by k.
    Series theta() const {
        Series r = *this;
        for (size_t i = 0; i < r.c_.size(); ++i) {
            long k = r.lo_ + static_cast<long>(i);
            r.c_[i] = R::from_rational(ring_, Rational(k)) * r.c_[i];
        }
        r.normalize();
        return r;
    }

    std::string str(const std::string& var = "t") const {
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            long k = lo_ + static_cast<long>(i);
            if (!out.empty()) out += " + ";
            std::string cs = c_[i].str();
            if (k == 0) { out += cs; continue; }
            if (cs != "1") out += cs + "*";
            out += var;
            if (k != 1) out += "^" + std::to_string(k);
        }
        if (out.empty()) out = "0";
        return out + " + O(" + var + "^" + std::to_string(order_) + ")";
    }

private:
    void check(const Series& o) const {
        if (ring_ != o.ring_) fail(errc::type_mismatch, "series over different rings");
    }
    // Coefficient for k in [min(lo, other windows), order): zero below lo.
    R window_coeff(long k) const {
        if (k < lo_ || k >= order_ || c_.empty()) return R::zero(ring_);
        size_t i = static_cast<size_t>(k - lo_);
        return i < c_.size() ? c_[i] : R::zero(ring_);
    }
    void normalize() {
        size_t drop = 0;
        while (drop < c_.size() && c_[drop].is_zero()) ++drop;
        if (drop > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(drop));
            lo_ += static_cast<long>(drop);
        }
        if (c_.empty()) lo_ = order_;
    }

    Ring ring_;
    long lo_;    // lowest possibly nonzero exponent
    long order_; // first unknown exponent
    std::vector<R> c_;
};

using QSeries = Series<Rational>;

} // namespace wittres
