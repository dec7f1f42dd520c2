#pragma once

/*
 * Dense univariate polynomials over the rationals.
 *
 * Coefficients are stored in ascending degree order with trailing zeros
 * trimmed; the zero polynomial has an empty coefficient vector and
 * degree() == -1.  All arithmetic is exact.
 */

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/rational.hpp"

namespace holorel {

class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) {          // NOLINT: implicit constant lift
        if (!c.is_zero()) c_.push_back(c);
    }
    Poly(long c) : Poly(Rational(c)) {} // NOLINT
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(size_t deg, const Rational& c = Rational(1)) {
        if (c.is_zero()) return Poly();
        std::vector<Rational> v(deg + 1);
        v[deg] = c;
        return Poly(std::move(v));
    }
    static Poly variable() { return monomial(1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const Rational& coeff(size_t k) const {
        static const Rational zero(0);
        return k < c_.size() ? c_[k] : zero;
    }
    const Rational& leading() const {
        if (is_zero()) throw Error("zero divisor");
        return c_.back();
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    // Index of the lowest nonzero coefficient; -1 for the zero polynomial.
    int valuation() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return static_cast<int>(k);
        return -1;
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) - b.coeff(k);
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) v[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Rational& s) {
        Poly r(a);
        for (auto& x : r.c_) x *= s;
        r.trim();
        return r;
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division; throws on a zero divisor.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error("zero divisor");
        Poly rem(a), quot;
        quot.c_.assign(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0,
                       Rational(0));
        const Rational& lb = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            size_t shift = rem.degree() - b.degree();
            Rational f = rem.leading() / lb;
            quot.c_[shift] = f;
            for (size_t k = 0; k < b.c_.size(); ++k)
                rem.c_[shift + k] -= f * b.c_[k];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    friend Poly operator/(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw Error("inexact polynomial division");
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const {
        if (is_zero()) return Poly();
        return *this * leading().inverse();
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rational> v(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * Rational(static_cast<long>(k));
        return Poly(std::move(v));
    }

    Rational eval(const Rational& x) const {
        Rational r(0);
        for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
        return r;
    }

    // Taylor shift p(x) -> p(x + a), exact via repeated synthetic division.
    Poly shift(const Rational& a) const {
        if (a.is_zero() || is_zero()) return *this;
        std::vector<Rational> v(c_);
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t k = v.size() - 1; k >= i + 1; --k)
                v[k - 1] += a * v[k];
        return Poly(std::move(v));
    }

    Poly pow(unsigned long e) const {
        Poly r(Rational(1)), b(*this);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    std::string str(const std::string& var = "x") const;

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

// Monic gcd; gcd(0, p) is the monic normalization of p.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return ((a * b) / poly_gcd(a, b)).monic();
}

inline std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        const Rational& c = c_[k];
        if (c.is_zero()) continue;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        if (k == 0) {
            os << a;
        } else {
            if (!a.is_one()) os << a << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

namespace detail {

// Divisors of |n| by trial division.  Returns nullopt once the divisor count
// or the remaining cofactor exceeds what exact search can afford; callers
// must then report the input as unfactorable rather than guess.
inline std::optional<std::vector<mpz_class>> divisors_with_bailout(mpz_class n,
                                                                   size_t max_divisors = 100000) {
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    std::vector<std::pair<mpz_class, unsigned>> fac;
    mpz_class m = n;
    unsigned long steps = 0;
    for (mpz_class p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (++steps > 2000000) return std::nullopt;
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) { m /= p; ++e; }
            fac.emplace_back(p, e);
        }
    }
    if (m > 1) fac.emplace_back(m, 1);
    std::vector<mpz_class> divs{1};
    for (auto& [p, e] : fac) {
        size_t base = divs.size();
        if (base * (e + 1) > max_divisors) return std::nullopt;
        mpz_class pk = 1;
        std::vector<mpz_class> next;
        next.reserve(base * (e + 1));
        for (unsigned i = 0; i <= e; ++i) {
            for (size_t j = 0; j < base; ++j) next.push_back(divs[j] * pk);
            pk *= p;
        }
        divs = std::move(next);
    }
    return divs;
}

} // namespace detail

struct RationalRoots {
    std::vector<std::pair<Rational, int>> roots; // (root, multiplicity)
    bool complete = false;                       // true iff p deflated to a constant
};

// All rational roots of p with multiplicities, found by candidate testing
// over divisor pairs of the integer-scaled extreme coefficients.
// `complete` reports whether the deflated quotient ended up constant, i.e.
// whether p splits into rational linear factors.
inline RationalRoots rational_roots(const Poly& p) {
    RationalRoots out;
    if (p.is_zero()) throw Error("zero divisor");
    Poly q(p);
    int v = q.valuation();
    if (v > 0) {
        std::vector<Rational> shifted(q.coeffs().begin() + v, q.coeffs().end());
        q = Poly(std::move(shifted));
        out.roots.emplace_back(Rational(0), v);
    }
    if (q.is_constant()) {
        out.complete = true;
        return out;
    }
    // Scale to integer coefficients.
    mpz_class scale = 1;
    for (const auto& c : q.coeffs()) scale = lcm(scale, c.den());
    std::vector<mpz_class> ic;
    ic.reserve(q.coeffs().size());
    for (const auto& c : q.coeffs()) ic.push_back(c.num() * (scale / c.den()));
    auto d0 = detail::divisors_with_bailout(ic.front());
    auto dn = detail::divisors_with_bailout(ic.back());
    if (!d0 || !dn) return out; // not complete
    std::vector<Rational> candidates;
    for (const auto& a : *d0)
        for (const auto& b : *dn) {
            Rational r(a, b);
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
        int mult = 0;
        while (!q.is_constant() && q.eval(r).is_zero()) {
            q = q / Poly(std::vector<Rational>{-r, Rational(1)});
            ++mult;
        }
        if (mult > 0) out.roots.emplace_back(r, mult);
        if (q.is_constant()) break;
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.complete = q.is_constant();
    return out;
}

} // namespace holorel
