#pragma once

/*
 * Z/p^m with p prime, m >= 1. Elements are normalized to [0, p^m).
 *
 * This ring is local: units are exactly the values not divisible by p.
 * Division is only defined by units; anything else throws rather than
 * producing a wrong value. Rationals map in through from_rational, which
 * refuses denominators divisible by p.
 */

#include <gmpxx.h>

#include <string>

#include "error.hpp"
#include "rational.hpp"

namespace wittres {

struct ZpmRing {
    BigInt p;
    int m = 1;
    BigInt modulus; // p^m, cached

    ZpmRing() : p(0), m(0), modulus(0) {}
    ZpmRing(const BigInt& p_, int m_) : p(p_), m(m_) {
        if (m_ < 1) fail(errc::unsupported, "Witt length must be >= 1");
        if (p_ < 2 || mpz_probab_prime_p(p_.get_mpz_t(), 40) == 0)
            fail(errc::unsupported, "modulus base " + p_.get_str() + " is not prime");
        modulus = pow_ui(p_, static_cast<unsigned long>(m_));
    }

    bool operator==(const ZpmRing& o) const { return p == o.p && m == o.m; }
    bool operator!=(const ZpmRing& o) const { return !(*this == o); }
};

class Zpm {
public:
    using Ring = ZpmRing;

    Zpm() = default;
    Zpm(Ring r, const BigInt& v) : ring_(std::move(r)) { set(v); }
    Zpm(Ring r, long v) : ring_(std::move(r)) { set(BigInt(v)); }

    Ring ring() const { return ring_; }
    static Zpm zero(Ring r) { return Zpm(std::move(r), 0); }
    static Zpm one(Ring r) { return Zpm(std::move(r), 1); }

    // Image of a/b; requires gcd(b, p) = 1.
    static Zpm from_rational(Ring r, const Rational& q) {
        Zpm num(r, q.numerator());
        BigInt den = q.denominator();
        if (den == 1) return num;
        return num * Zpm(r, den).inverse_or(
            errc::denominator_not_invertible,
            "denominator " + den.get_str() + " is divisible by " + r.p.get_str());
    }

    const BigInt& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const { return v_ != 0 && mpz_divisible_p(v_.get_mpz_t(), ring_.p.get_mpz_t()) == 0; }

    Zpm inverse() const {
        return inverse_or(errc::not_invertible,
                          v_.get_str() + " mod " + ring_.modulus.get_str());
    }

    Zpm operator-() const { return Zpm(ring_, -v_); }
    Zpm& operator+=(const Zpm& o) { check(o); v_ += o.v_; reduce(); return *this; }
    Zpm& operator-=(const Zpm& o) { check(o); v_ -= o.v_; reduce(); return *this; }
    Zpm& operator*=(const Zpm& o) { check(o); v_ *= o.v_; reduce(); return *this; }

    friend Zpm operator+(Zpm a, const Zpm& b) { return a += b; }
    friend Zpm operator-(Zpm a, const Zpm& b) { return a -= b; }
    friend Zpm operator*(Zpm a, const Zpm& b) { return a *= b; }
    friend bool operator==(const Zpm& a, const Zpm& b) { return a.ring_ == b.ring_ && a.v_ == b.v_; }
    friend bool operator!=(const Zpm& a, const Zpm& b) { return !(a == b); }

    Zpm pow(unsigned long e) const {
        Zpm r = *this;
        mpz_powm_ui(r.v_.get_mpz_t(), v_.get_mpz_t(), e, ring_.modulus.get_mpz_t());
        return r;
    }

    // Drop to Z/p^k, k <= m. Ring homomorphism.
    Zpm reduce_level(int k) const {
        if (k < 1 || k > ring_.m) fail(errc::unsupported, "bad target level");
        return Zpm(Ring(ring_.p, k), v_);
    }

    std::string str() const { return v_.get_str(); }

private:
    void set(const BigInt& v) { v_ = v; reduce(); }
    void reduce() { mpz_fdiv_r(v_.get_mpz_t(), v_.get_mpz_t(), ring_.modulus.get_mpz_t()); }
    void check(const Zpm& o) const {
        if (ring_ != o.ring_)
            fail(errc::type_mismatch, "Z/" + ring_.modulus.get_str() + " vs Z/" + o.ring_.modulus.get_str());
    }
    Zpm inverse_or(errc code, const std::string& what) const {
        BigInt r;
        if (mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), ring_.modulus.get_mpz_t()) == 0)
            fail(code, what);
        return Zpm(ring_, r);
    }

    Ring ring_;
    BigInt v_;
};

} // namespace wittres
