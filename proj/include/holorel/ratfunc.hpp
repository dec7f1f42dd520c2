#pragma once

/*
 * Rational functions over the rationals.
 *
 * Always kept reduced (gcd(num, den) = 1) with a monic denominator, so
 * equality is plain structural equality.  Construction with a zero
 * denominator throws Error("zero divisor").
 */

#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "holorel/error.hpp"
#include "holorel/poly.hpp"
#include "holorel/rational.hpp"

namespace holorel {

class RationalFunction {
public:
    RationalFunction() : num_(), den_(Rational(1)) {}
    RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {} // NOLINT
    RationalFunction(long c) : num_(Rational(c)), den_(Rational(1)) {}  // NOLINT
    RationalFunction(const Poly& p) : num_(p), den_(Rational(1)) {}     // NOLINT
    RationalFunction(Poly num, Poly den) {
        if (den.is_zero()) throw Error("zero divisor");
        Poly g = poly_gcd(num, den);
        if (!g.is_constant()) {
            num = num / g;
            den = den / g;
        }
        Rational lead = den.leading();
        num_ = num * lead.inverse();
        den_ = den * lead.inverse();
    }

    static RationalFunction variable() { return RationalFunction(Poly::variable()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.is_constant() && den_.degree() == 0; }

    Rational constant_value() const {
        if (!is_constant()) throw Error("not a constant");
        return num_.coeff(0);
    }

    RationalFunction operator-() const { return from_reduced(-num_, den_); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw Error("zero divisor");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(),
                                den_ * den_);
    }

    RationalFunction pow(long e) const {
        if (e < 0) {
            if (is_zero()) throw Error("zero divisor");
            return from_reduced(den_, num_).pow(-e).normalized();
        }
        RationalFunction r(Rational(1)), b(*this);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    Rational eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d.is_zero()) throw Error("pole at evaluation point");
        return num_.eval(x) / d;
    }

    bool has_pole_at(const Rational& x) const { return den_.eval(x).is_zero(); }

    // Order of vanishing at 0: val(num) - val(den).  Throws on zero input.
    int valuation_at_zero() const {
        if (is_zero()) throw Error("zero divisor");
        return num_.valuation() - den_.valuation();
    }

    // f(1/v) as a rational function of v.
    RationalFunction substitute_inverse() const {
        auto rev = [](const Poly& p) {
            std::vector<Rational> v(p.coeffs().rbegin(), p.coeffs().rend());
            return Poly(std::move(v));
        };
        if (is_zero()) return RationalFunction();
        int dn = num_.degree(), dd = den_.degree();
        Poly n = rev(num_), d = rev(den_);
        if (dn > dd)
            d = d * Poly::monomial(dn - dd);
        else if (dd > dn)
            n = n * Poly::monomial(dd - dn);
        return RationalFunction(n, d);
    }

    std::string str(const std::string& var = "x") const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& r) {
        return os << r.str();
    }

private:
    static RationalFunction from_reduced(Poly n, Poly d) {
        RationalFunction r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }
    RationalFunction normalized() const { return RationalFunction(num_, den_); }

    Poly num_, den_;
};

} // namespace holorel
