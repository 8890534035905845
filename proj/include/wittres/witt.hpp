#pragma once

/*
 * Truncated p-typical Witt vectors W_m(A).
 *
 * The ghost map sends (x_0, ..., x_{m-1}) to the vector with components
 * w_k = sum_{i<=k} p^i x_i^(p^(k-i)). Ring operations are defined by making
 * the ghost map a ring homomorphism. Over a ring where p is invertible and
 * has no torsion (Q, polynomial rings over Q) the ghost equations are solved
 * directly by recursion; the solution of the generic equations has integer
 * coefficients, so for base rings of characteristic p (F_p and polynomial
 * rings over F_p) arithmetic is performed on the canonical integer lift and
 * reduced back. Every division by p^k on the lifted path is checked exact;
 * an inexact one would mean the universal integrality failed and raises
 * IntegralityViolation instead of rounding.
 *
 * witt_table(p, n) materializes the universal sum/product/negation
 * polynomials S_k, P_k, I_k for k <= n by running the same solver on generic
 * components X_i, Y_i. Tables are cached per (p, n) and integrality-checked
 * on construction. Beware that table sizes grow quickly with p and n.
 */

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "modring.hpp"
#include "multipoly.hpp"
#include "rational.hpp"

namespace wittres {

// Per-component-type plumbing: whether ghost solving must run on a lift,
// and what "integral" means for the exactness check.
template <class A>
struct WittScalar;

template <>
struct WittScalar<Rational> {
    static constexpr bool char_p = false;
    static bool integral(const Rational& q) { return q.is_integer(); }
};

template <>
struct WittScalar<QPoly> {
    static constexpr bool char_p = false;
    static bool integral(const QPoly& f) {
        for (const auto& [m, c] : f.terms())
            if (!c.is_integer()) return false;
        return true;
    }
};

template <>
struct WittScalar<Zpm> {
    static constexpr bool char_p = true;
    using Lift = Rational;
    static Rational lift(const Zpm& a) { return Rational(a.value()); }
    static Zpm unlift(const typename Zpm::Ring& r, const Rational& q) {
        require_internal(q.is_integer(), "non-integral value after exact ghost solve");
        return Zpm(r, q.numerator());
    }
    static RationalRing lift_ring(const typename Zpm::Ring&) { return {}; }
};

template <>
struct WittScalar<ZpmPoly> {
    static constexpr bool char_p = true;
    using Lift = QPoly;
    static QPoly lift(const ZpmPoly& f) {
        QPoly::Ring r = QPoly::make_ring(RationalRing{}, f.ring().names);
        return f.template map_coefficients<Rational>(r, [](const Zpm& c) { return Rational(c.value()); });
    }
    static ZpmPoly unlift(const typename ZpmPoly::Ring& r, const QPoly& f) {
        return f.template map_coefficients<Zpm>(r, [&](const Rational& c) {
            require_internal(c.is_integer(), "non-integral value after exact ghost solve");
            return Zpm(r.base, c.numerator());
        });
    }
    static QPoly::Ring lift_ring(const typename ZpmPoly::Ring& r) {
        return QPoly::make_ring(RationalRing{}, r.names);
    }
};

namespace detail {

inline unsigned long to_ulong_exp(const BigInt& p, int e) {
    BigInt pe = pow_ui(p, static_cast<unsigned long>(e));
    if (!pe.fits_ulong_p()) fail(errc::unsupported, "exponent p^" + std::to_string(e) + " too large");
    return pe.get_ui();
}

// Ghost component w_k over a torsion-free ring.
template <class T>
T ghost_component(const BigInt& p, const std::vector<T>& x, int k, const typename T::Ring& ring) {
    T acc = T::zero(ring);
    for (int i = 0; i <= k; ++i) {
        T piece = x[static_cast<size_t>(i)].pow(to_ulong_exp(p, k - i));
        acc = acc + piece * T::from_rational(ring, Rational(pow_ui(p, static_cast<unsigned long>(i))));
    }
    return acc;
}

// Solves ghost(z)_k = target(k) for k < len. With require_integral the
// division by p^k must be exact over Z, else IntegralityViolation.
template <class T>
std::vector<T> solve_ghost(const BigInt& p, int len, const typename T::Ring& ring,
                           const std::function<T(int)>& target, bool require_integral) {
    std::vector<T> z;
    z.reserve(static_cast<size_t>(len));
    for (int k = 0; k < len; ++k) {
        T acc = target(k);
        for (int i = 0; i < k; ++i) {
            T piece = z[static_cast<size_t>(i)].pow(to_ulong_exp(p, k - i));
            acc = acc - piece * T::from_rational(ring, Rational(pow_ui(p, static_cast<unsigned long>(i))));
        }
        T zk = acc * T::from_rational(ring, Rational(BigInt(1), pow_ui(p, static_cast<unsigned long>(k))));
        if (require_integral && !WittScalar<T>::integral(zk))
            fail(errc::integrality_violation,
                 "ghost solve required an inexact division by p^" + std::to_string(k));
        z.push_back(std::move(zk));
    }
    return z;
}

} // namespace detail

template <class A>
struct WittRingT {
    BigInt p;
    int len = 0;
    typename A::Ring base;

    bool operator==(const WittRingT& o) const { return p == o.p && len == o.len && base == o.base; }
    bool operator!=(const WittRingT& o) const { return !(*this == o); }
};

template <class A>
class WittVector {
public:
    using Ring = WittRingT<A>;

    WittVector() = default;
    WittVector(Ring r, std::vector<A> comps) : ring_(std::move(r)), c_(std::move(comps)) {
        if (ring_.len < 1) fail(errc::unsupported, "Witt length must be >= 1");
        if (ring_.p < 2 || mpz_probab_prime_p(ring_.p.get_mpz_t(), 40) == 0)
            fail(errc::unsupported, "Witt prime " + ring_.p.get_str() + " is not prime");
        if (c_.size() != static_cast<size_t>(ring_.len))
            fail(errc::type_mismatch, "component count != Witt length");
    }

    static WittVector zero(Ring r) {
        std::vector<A> c(static_cast<size_t>(r.len), A::zero(r.base));
        return WittVector(std::move(r), std::move(c));
    }
    // Teichmueller representative [a] = (a, 0, ..., 0); multiplicative.
    static WittVector teichmuller(Ring r, const A& a) {
        WittVector v = zero(std::move(r));
        v.c_[0] = a;
        return v;
    }

    Ring ring() const { return ring_; }
    int length() const { return ring_.len; }
    const BigInt& prime() const { return ring_.p; }
    const std::vector<A>& components() const { return c_; }
    const A& component(int i) const { return c_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (const auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }

    // Ghost components; only defined where p-division is faithful.
    std::vector<A> ghost() const {
        if constexpr (WittScalar<A>::char_p)
            fail(errc::unsupported, "ghost map over a characteristic-p base ring");
        std::vector<A> g;
        for (int k = 0; k < ring_.len; ++k)
            g.push_back(detail::ghost_component(ring_.p, c_, k, ring_.base));
        return g;
    }

    friend WittVector operator+(const WittVector& a, const WittVector& b) {
        a.check(b);
        return combine(a, b, /*product=*/false);
    }
    friend WittVector operator*(const WittVector& a, const WittVector& b) {
        a.check(b);
        return combine(a, b, /*product=*/true);
    }
    WittVector operator-() const {
        if constexpr (WittScalar<A>::char_p) {
            using L = typename WittScalar<A>::Lift;
            auto lring = WittScalar<A>::lift_ring(ring_.base);
            std::vector<L> xl = this->template lift_components<L>(lring);
            auto z = solve_neg<L>(ring_.p, ring_.len, lring, xl, true);
            return unlift_components(ring_, z);
        } else {
            auto z = solve_neg<A>(ring_.p, ring_.len, ring_.base, c_, false);
            return WittVector(ring_, std::move(z));
        }
    }
    friend WittVector operator-(const WittVector& a, const WittVector& b) { return a + (-b); }

    friend bool operator==(const WittVector& a, const WittVector& b) {
        return a.ring_ == b.ring_ && a.c_ == b.c_;
    }
    friend bool operator!=(const WittVector& a, const WittVector& b) { return !(a == b); }

    // n-fold sum in the ring (not a component scaling).
    WittVector int_scale(long n) const {
        if (n < 0) return (-*this).int_scale(-n);
        WittVector acc = zero(ring_);
        WittVector base = *this;
        unsigned long e = static_cast<unsigned long>(n);
        while (e > 0) {
            if (e & 1) acc = acc + base;
            e >>= 1;
            if (e > 0) base = base + base;
        }
        return acc;
    }

    // V(x)_i = x_{i-1}; additive, and F(V(x)) = p x.
    WittVector verschiebung() const {
        std::vector<A> c(static_cast<size_t>(ring_.len), A::zero(ring_.base));
        for (int i = 1; i < ring_.len; ++i) c[static_cast<size_t>(i)] = c_[static_cast<size_t>(i - 1)];
        return WittVector(ring_, std::move(c));
    }

    // Drops the last component; W_m -> W_{m-1} of the inverse system.
    WittVector restriction() const {
        if (ring_.len < 2) fail(errc::unsupported, "restriction needs length >= 2");
        Ring r = ring_;
        r.len -= 1;
        std::vector<A> c(c_.begin(), c_.end() - 1);
        return WittVector(std::move(r), std::move(c));
    }

    // F: W_m -> W_{m-1}. Componentwise p-th power in characteristic p,
    // ghost-shift solve otherwise.
    WittVector frobenius() const {
        if (ring_.len < 2) fail(errc::unsupported, "frobenius needs length >= 2");
        Ring r = ring_;
        r.len -= 1;
        unsigned long pe = detail::to_ulong_exp(ring_.p, 1);
        if constexpr (WittScalar<A>::char_p) {
            std::vector<A> c;
            for (int i = 0; i < r.len; ++i) c.push_back(c_[static_cast<size_t>(i)].pow(pe));
            return WittVector(std::move(r), std::move(c));
        } else {
            auto self = c_;
            BigInt p = ring_.p;
            auto base = ring_.base;
            auto z = detail::solve_ghost<A>(
                p, r.len, base,
                [&](int k) { return detail::ghost_component(p, self, k + 1, base); }, false);
            return WittVector(std::move(r), std::move(z));
        }
    }

    std::string str() const {
        std::string out = "(";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ", ";
            out += c_[i].str();
        }
        return out + ")";
    }

private:
    void check(const WittVector& o) const {
        if (ring_ != o.ring_) fail(errc::type_mismatch, "Witt vectors over different rings");
    }

    template <class L>
    std::vector<L> lift_components(const typename L::Ring&) const {
        std::vector<L> out;
        for (const auto& x : c_) out.push_back(WittScalar<A>::lift(x));
        return out;
    }
    template <class L>
    static WittVector unlift_components(const Ring& r, const std::vector<L>& z) {
        std::vector<A> c;
        for (const auto& x : z) c.push_back(WittScalar<A>::unlift(r.base, x));
        return WittVector(r, std::move(c));
    }

    template <class T>
    static std::vector<T> solve_bin(const BigInt& p, int len, const typename T::Ring& ring,
                                    const std::vector<T>& x, const std::vector<T>& y,
                                    bool product, bool require_integral) {
        return detail::solve_ghost<T>(
            p, len, ring,
            [&](int k) {
                T gx = detail::ghost_component(p, x, k, ring);
                T gy = detail::ghost_component(p, y, k, ring);
                return product ? gx * gy : gx + gy;
            },
            require_integral);
    }
    template <class T>
    static std::vector<T> solve_neg(const BigInt& p, int len, const typename T::Ring& ring,
                                    const std::vector<T>& x, bool require_integral) {
        return detail::solve_ghost<T>(
            p, len, ring,
            [&](int k) { return -detail::ghost_component(p, x, k, ring); },
            require_integral);
    }

    static WittVector combine(const WittVector& a, const WittVector& b, bool product) {
        if constexpr (WittScalar<A>::char_p) {
            using L = typename WittScalar<A>::Lift;
            auto lring = WittScalar<A>::lift_ring(a.ring_.base);
            std::vector<L> xl = a.template lift_components<L>(lring);
            std::vector<L> yl = b.template lift_components<L>(lring);
            auto z = solve_bin<L>(a.ring_.p, a.ring_.len, lring, xl, yl, product, true);
            return unlift_components(a.ring_, z);
        } else {
            auto z = solve_bin<A>(a.ring_.p, a.ring_.len, a.ring_.base, a.c_, b.c_, product, false);
            return WittVector(a.ring_, std::move(z));
        }
    }

    Ring ring_;
    std::vector<A> c_;
};

// W_m(F_p) components must live over Z/p with the same p.
inline WittVector<Zpm> make_witt_fp(const BigInt& p, int len, const std::vector<BigInt>& vals) {
    ZpmRing fp(p, 1);
    std::vector<Zpm> c;
    for (const auto& v : vals) c.emplace_back(fp, v);
    return WittVector<Zpm>(WittRingT<Zpm>{p, len, fp}, std::move(c));
}

// Teichmueller lift of a in F_p to Z/p^m: the unique root of unity (or 0)
// over a. Computed as a^(p^(m-1)), which is Frobenius-stable at level m.
inline Zpm teichmuller_zpm(const ZpmRing& target, const BigInt& a) {
    BigInt e = pow_ui(target.p, static_cast<unsigned long>(target.m - 1));
    BigInt r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), target.modulus.get_mpz_t());
    return Zpm(target, r);
}

// Ring isomorphism W_m(F_p) -> Z/p^m: x maps to sum_i p^i [x_i].
inline Zpm witt_to_zpm(const WittVector<Zpm>& x) {
    if (x.ring().base.m != 1) fail(errc::unsupported, "witt_to_zpm expects components in F_p");
    ZpmRing target(x.prime(), x.length());
    Zpm acc = Zpm::zero(target);
    for (int i = 0; i < x.length(); ++i) {
        Zpm t = teichmuller_zpm(target, x.component(i).value());
        acc += t * Zpm(target, pow_ui(x.prime(), static_cast<unsigned long>(i)));
    }
    return acc;
}

// Universal Witt polynomials in X_0..X_n, Y_0..Y_n (I uses only X).
struct WittTable {
    BigInt p;
    int depth = 0; // polynomials S_0..S_depth etc.
    QPoly::Ring ring;
    std::vector<QPoly> S, P, I;
};

namespace detail {

inline std::shared_ptr<const WittTable> build_witt_table(const BigInt& p, int depth) {
    auto t = std::make_shared<WittTable>();
    t->p = p;
    t->depth = depth;
    std::vector<std::string> names;
    for (int i = 0; i <= depth; ++i) names.push_back("X" + std::to_string(i));
    for (int i = 0; i <= depth; ++i) names.push_back("Y" + std::to_string(i));
    t->ring = QPoly::make_ring(RationalRing{}, names);

    int len = depth + 1;
    WittRingT<QPoly> wr{p, len, t->ring};
    std::vector<QPoly> xs, ys;
    for (int i = 0; i < len; ++i) xs.push_back(QPoly::variable(t->ring, i));
    for (int i = 0; i < len; ++i) ys.push_back(QPoly::variable(t->ring, len + i));
    WittVector<QPoly> X(wr, xs), Y(wr, ys);

    auto check_integral = [&](const std::vector<QPoly>& v, const char* which) {
        for (size_t k = 0; k < v.size(); ++k)
            if (!WittScalar<QPoly>::integral(v[k]))
                fail(errc::integrality_violation,
                     std::string(which) + "_" + std::to_string(k) + " has a non-integer coefficient");
    };
    t->S = (X + Y).components();
    t->P = (X * Y).components();
    t->I = (-X).components();
    check_integral(t->S, "S");
    check_integral(t->P, "P");
    check_integral(t->I, "I");
    return t;
}

} // namespace detail

// Cached per (p, depth); concurrent requests build at most once per key.
inline std::shared_ptr<const WittTable> witt_table(const BigInt& p, int depth) {
    static std::mutex mu;
    static std::map<std::pair<BigInt, int>, std::shared_ptr<const WittTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, depth);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = detail::build_witt_table(p, depth);
    cache.emplace(key, t);
    return t;
}

} // namespace wittres
