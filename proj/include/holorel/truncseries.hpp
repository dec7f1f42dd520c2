#pragma once

/*
 * Truncated power series with exact rational coefficients.
 *
 * A TruncSeries of order N carries the coefficients c_0..c_N and stands for
 * a series known modulo x^(N+1).  Binary operations truncate to the smaller
 * order; derivatives lose one order, primitives gain one.  Multiplication by
 * a rational function requires the denominator to be a unit at 0, unless the
 * numerator-side valuation compensates (the valuation is tracked exactly and
 * a failure throws).
 */

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/poly.hpp"
#include "holorel/rational.hpp"
#include "holorel/ratfunc.hpp"

namespace holorel {

class TruncSeries {
public:
    TruncSeries() : c_(1) {} // zero series of order 0
    explicit TruncSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw Error("series needs order >= 0");
    }

    static TruncSeries zero(long order) {
        return TruncSeries(std::vector<Rational>(order + 1));
    }
    static TruncSeries constant(const Rational& v, long order) {
        TruncSeries s = zero(order);
        s.c_[0] = v;
        return s;
    }
    static TruncSeries variable(long order) {
        TruncSeries s = zero(order);
        if (order >= 1) s.c_[1] = Rational(1);
        return s;
    }
    static TruncSeries from_poly(const Poly& p, long order) {
        TruncSeries s = zero(order);
        for (long k = 0; k <= order; ++k) s.c_[k] = p.coeff(k);
        return s;
    }

    long order() const { return static_cast<long>(c_.size()) - 1; }
    const Rational& coeff(long k) const {
        static const Rational zero_(0);
        return (k >= 0 && k <= order()) ? c_[k] : zero_;
    }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
    }

    TruncSeries truncated(long order) const {
        if (order >= this->order()) return *this;
        if (order < 0) throw Error("series needs order >= 0");
        return TruncSeries(std::vector<Rational>(c_.begin(), c_.begin() + order + 1));
    }

    TruncSeries operator-() const {
        TruncSeries r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        long n = std::min(a.order(), b.order());
        std::vector<Rational> v(n + 1);
        for (long k = 0; k <= n; ++k) v[k] = a.c_[k] + b.c_[k];
        return TruncSeries(std::move(v));
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        return a + (-b);
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        long n = std::min(a.order(), b.order());
        std::vector<Rational> v(n + 1);
        for (long i = 0; i <= n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (long j = 0; i + j <= n; ++j)
                if (!b.c_[j].is_zero()) v[i + j] += a.c_[i] * b.c_[j];
        }
        return TruncSeries(std::move(v));
    }
    friend TruncSeries operator*(const TruncSeries& a, const Rational& s) {
        TruncSeries r(a);
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend TruncSeries operator*(const Rational& s, const TruncSeries& a) { return a * s; }

    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    TruncSeries pow(unsigned long e) const {
        TruncSeries r = constant(Rational(1), order());
        TruncSeries b(*this);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // d/dx; the result is one order shorter.
    TruncSeries derivative() const {
        if (order() == 0) throw Error("series order too small for derivative");
        std::vector<Rational> v(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k)
            v[k - 1] = c_[k] * Rational(static_cast<long>(k));
        return TruncSeries(std::move(v));
    }

    // x * d/dx; order-preserving.
    TruncSeries euler_derivative() const {
        TruncSeries r(*this);
        for (size_t k = 0; k < r.c_.size(); ++k)
            r.c_[k] *= Rational(static_cast<long>(k));
        return r;
    }

    // Primitive with value `constant` at 0; the result is one order longer.
    TruncSeries primitive(const Rational& constant = Rational(0)) const {
        std::vector<Rational> v(c_.size() + 1);
        v[0] = constant;
        for (size_t k = 0; k < c_.size(); ++k)
            v[k + 1] = c_[k] / Rational(static_cast<long>(k + 1));
        return TruncSeries(std::move(v));
    }

    // Multiplication by x^k (k >= 0).
    TruncSeries shifted_up(long k) const {
        std::vector<Rational> v(c_.size());
        for (long i = k; i <= order(); ++i) v[i] = c_[i - k];
        return TruncSeries(std::move(v));
    }

    // Division by the series of a polynomial with d(0) != 0.
    TruncSeries divided_by_unit(const Poly& d) const {
        if (d.is_zero()) throw Error("zero divisor");
        if (d.coeff(0).is_zero()) throw Error("non-unit denominator in series division");
        Rational inv = d.coeff(0).inverse();
        std::vector<Rational> v(c_.size());
        for (long k = 0; k <= order(); ++k) {
            Rational acc = c_[k];
            long top = std::min<long>(k, d.degree());
            for (long j = 1; j <= top; ++j) acc -= d.coeff(j) * v[k - j];
            v[k] = acc * inv;
        }
        return TruncSeries(std::move(v));
    }

    // Multiplication by a rational function.  A denominator valuation v > 0
    // must be cancelled by the product's valuation; otherwise this throws.
    // The result loses v orders of precision.
    TruncSeries mul_ratfunc(const RationalFunction& r) const {
        if (r.is_zero()) return zero(order());
        int v = r.den().valuation();
        Poly unit = r.den();
        if (v > 0) {
            std::vector<Rational> dc(unit.coeffs().begin() + v, unit.coeffs().end());
            unit = Poly(std::move(dc));
        }
        TruncSeries t = (*this * TruncSeries::from_poly(r.num(), order()))
                            .divided_by_unit(unit);
        if (v == 0) return t;
        if (t.order() < v) throw Error("series order too small for denominator valuation");
        for (int k = 0; k < v; ++k)
            if (!t.c_[k].is_zero())
                throw Error("non-unit denominator in series multiplication: " + r.str());
        return TruncSeries(std::vector<Rational>(t.c_.begin() + v, t.c_.end()));
    }

    std::string str(const std::string& var = "x") const {
        std::ostringstream os;
        bool first = true;
        for (long k = 0; k <= order(); ++k) {
            if (c_[k].is_zero()) continue;
            Rational a = c_[k].abs();
            if (first) {
                if (c_[k].sign() < 0) os << "-";
                first = false;
            } else {
                os << (c_[k].sign() < 0 ? " - " : " + ");
            }
            if (k == 0) {
                os << a;
            } else {
                if (!a.is_one()) os << a << "*";
                os << var;
                if (k > 1) os << "^" << k;
            }
        }
        if (first) os << "0";
        os << " + O(" << var << "^" << (order() + 1) << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const TruncSeries& s) {
        return os << s.str();
    }

private:
    std::vector<Rational> c_;
};

} // namespace holorel
