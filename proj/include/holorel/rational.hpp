#pragma once

/*
 * Arbitrary-precision rational numbers.
 *
 * Thin wrapper over GMP's mpq_class that canonicalizes on every
 * construction, so a Rational is always in lowest terms with a positive
 * denominator.  Division by zero throws Error("zero divisor").
 */

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "holorel/error.hpp"

namespace holorel {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}          // NOLINT: implicit by design
    Rational(int n) : v_(n) {}           // NOLINT
    Rational(long num, long den) {
        if (den == 0) throw Error("zero divisor");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& z) : v_(z) {}
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw Error("zero divisor");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Parses "p" or "p/q" in base 10.
    static Rational parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw Error("invalid rational literal: " + s);
        if (q.get_den() == 0) throw Error("zero divisor");
        q.canonicalize();
        return Rational(q);
    }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    // Exact conversion; nullopt when out of range or not an integer.
    std::optional<long> to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p()) return std::nullopt;
        return v_.get_num().get_si();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("zero divisor");
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

    Rational inverse() const {
        if (is_zero()) throw Error("zero divisor");
        return Rational(mpq_class(v_.get_den(), v_.get_num()));
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    std::string str() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.v_.get_str();
    }

private:
    mpq_class v_;
};

// Exact n-th root when it exists in the rationals; nullopt otherwise.
// For even n the nonnegative root is returned and negative inputs fail.
inline std::optional<Rational> nth_root_exact(const Rational& r, unsigned long n) {
    if (n == 0) throw Error("zero divisor");
    if (r.is_zero()) return Rational(0);
    if (r.sign() < 0 && n % 2 == 0) return std::nullopt;
    mpz_class num = r.num(), den = r.den();
    bool neg = num < 0;
    if (neg) num = -num;
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
    if (neg) rn = -rn;
    return Rational(rn, rd);
}

} // namespace holorel
