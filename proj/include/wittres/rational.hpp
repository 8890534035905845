#pragma once

/*
 * Exact rational scalars, GMP-backed.
 *
 * Rational is a plain value type: the expression-template quirks of gmpxx
 * stay behind this interface so generic code over a coefficient ring R can
 * use auto, accumulate, and friends safely.
 *
 * Every scalar type used as a coefficient ring exposes the same surface:
 *   using Ring = ...;          descriptor, equality-comparable
 *   ring(), is_zero(), is_unit(), inverse()
 *   static zero(Ring), one(Ring), from_rational(Ring, Rational)
 * Containers (series, polynomials) store a Ring so they can mint elements
 * even when empty.
 */

#include <gmpxx.h>

#include <string>

#include "error.hpp"

namespace wittres {

using BigInt = mpz_class;

// Exponent of the largest power of p dividing n; n must be nonzero.
inline int padic_valuation(const BigInt& p, BigInt n) {
    require_internal(n != 0, "valuation of zero");
    int v = 0;
    BigInt q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        n = q;
        ++v;
    }
}

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

struct RationalRing {
    bool operator==(const RationalRing&) const { return true; }
    bool operator!=(const RationalRing&) const { return false; }
};

class Rational {
public:
    using Ring = RationalRing;

    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) fail(errc::not_invertible, "zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
        if (den == 0) fail(errc::not_invertible, "zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "a/b" or "a"; base-10 only.
    static Rational parse(const std::string& s) {
        mpq_class v;
        if (v.set_str(s, 10) != 0) fail(errc::parse_error, "bad rational literal '" + s + "'");
        v.canonicalize();
        return Rational(v);
    }

    Ring ring() const { return {}; }
    static Rational zero(Ring) { return Rational(); }
    static Rational one(Ring) { return Rational(1); }
    static Rational from_rational(Ring, const Rational& q) { return q; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const { return v_ != 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }

    Rational inverse() const {
        if (is_zero()) fail(errc::not_invertible, "1/0 over Q");
        return Rational(mpq_class(1) / v_);
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) fail(errc::not_invertible, "division by zero over Q");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational pow(unsigned long e) const {
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), e);
        mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), e);
        return Rational(r);
    }

    // Canonical form: "a" when the denominator is 1, else "a/b", b > 0.
    std::string str() const { return v_.get_str(10); }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& q) { return q < Rational(0) ? -q : q; }

} // namespace wittres
