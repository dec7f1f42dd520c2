#pragma once

/*
 * Laurent polynomials c_v * w^v + ... + c_h * w^h over a coefficient ring C
 * (rationals, or rational-coefficient polynomials when a symbolic parameter
 * rides along).  Stored as the valuation plus a dense coefficient run; both
 * ends are kept trimmed, and zero is the empty run with valuation 0.
 */

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

template <class C>
class Laurent {
public:
    Laurent() = default;
    Laurent(const C& c) { // NOLINT: implicit constant lift
        if (!c.is_zero()) c_ = {c};
    }
    Laurent(int v, std::vector<C> coeffs) : val_(v), c_(std::move(coeffs)) { trim(); }

    static Laurent term(int exp, const C& c) {
        if (c.is_zero()) return Laurent();
        return Laurent(exp, {c});
    }

    bool is_zero() const { return c_.empty(); }
    int valuation() const {
        if (is_zero()) throw Error("zero divisor");
        return val_;
    }
    int top_degree() const {
        if (is_zero()) throw Error("zero divisor");
        return val_ + static_cast<int>(c_.size()) - 1;
    }
    C coeff(int exp) const {
        if (exp < val_ || exp >= val_ + static_cast<int>(c_.size())) return C();
        return c_[exp - val_];
    }
    const C& lowest() const {
        if (is_zero()) throw Error("zero divisor");
        return c_.front();
    }

    Laurent operator-() const {
        Laurent r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int lo = std::min(a.val_, b.val_);
        int hi = std::max(a.top_degree(), b.top_degree());
        std::vector<C> v(hi - lo + 1);
        for (int e = lo; e <= hi; ++e) v[e - lo] = a.coeff(e) + b.coeff(e);
        return Laurent(lo, std::move(v));
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) return Laurent();
        std::vector<C> v(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return Laurent(a.val_ + b.val_, std::move(v));
    }
    friend Laurent operator*(const Laurent& a, const C& s) { return a * Laurent(s); }
    friend Laurent operator*(const C& s, const Laurent& a) { return a * Laurent(s); }

    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return (a.is_zero() && b.is_zero()) || (a.val_ == b.val_ && a.c_ == b.c_);
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    // w * d/dw: multiplies each term by its exponent, leaving degrees fixed.
    Laurent euler_derivative() const {
        Laurent r(*this);
        for (size_t k = 0; k < r.c_.size(); ++k)
            r.c_[k] = r.c_[k] * Rational(static_cast<long>(r.val_ + static_cast<int>(k)));
        r.trim();
        return r;
    }

    // d/dw.
    Laurent std_derivative() const {
        Laurent r = euler_derivative();
        if (!r.is_zero()) r.val_ -= 1;
        return r;
    }

    // w -> w^sigma.
    Laurent stretch(unsigned sigma) const {
        if (sigma == 0) throw Error("zero divisor");
        if (is_zero() || sigma == 1) return *this;
        std::vector<C> v((c_.size() - 1) * sigma + 1);
        for (size_t k = 0; k < c_.size(); ++k) v[k * sigma] = c_[k];
        return Laurent(val_ * static_cast<int>(sigma), std::move(v));
    }

    Laurent shifted(int k) const {
        Laurent r(*this);
        if (!r.is_zero()) r.val_ += k;
        return r;
    }

    std::string str(const std::string& var, const std::string& coeff_var = "a") const;

private:
    void trim() {
        size_t drop = 0;
        while (drop < c_.size() && c_[drop].is_zero()) ++drop;
        if (drop) {
            c_.erase(c_.begin(), c_.begin() + drop);
            val_ += static_cast<int>(drop);
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) val_ = 0;
    }

    int val_ = 0;
    std::vector<C> c_;
};

namespace detail {
inline std::string laurent_coeff_str(const Rational& c, const std::string&) { return c.str(); }
inline std::string laurent_coeff_str(const Poly& c, const std::string& var) { return c.str(var); }
inline bool laurent_coeff_simple(const Rational& c) { return c.sign() > 0; }
inline bool laurent_coeff_simple(const Poly& c) {
    return c.is_constant() && c.coeff(0).sign() > 0;
}
} // namespace detail

template <class C>
std::string Laurent<C>::str(const std::string& var, const std::string& coeff_var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = top_degree(); e >= val_; --e) {
        C c = coeff(e);
        if (c.is_zero()) continue;
        std::string cs = detail::laurent_coeff_str(c, coeff_var);
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << (detail::laurent_coeff_simple(c) ? cs : "(" + cs + ")");
            continue;
        }
        if (cs == "1") {
            os << var;
        } else if (cs == "-1") {
            os << "-" << var;
        } else {
            os << (detail::laurent_coeff_simple(c) ? cs : "(" + cs + ")") << "*" << var;
        }
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// Conversion from a rational function whose denominator is a pure monomial.
inline Laurent<Rational> to_laurent(const RationalFunction& r) {
    if (r.is_zero()) return Laurent<Rational>();
    const Poly& d = r.den();
    if (d.valuation() != d.degree())
        throw Error("non-monomial denominator: " + r.str());
    // The denominator is monic, hence exactly x^deg.
    std::vector<Rational> coeffs(r.num().coeffs());
    return Laurent<Rational>(-d.degree(), std::move(coeffs));
}

inline RationalFunction laurent_to_ratfunc(const Laurent<Rational>& l) {
    if (l.is_zero()) return RationalFunction();
    int v = l.valuation();
    std::vector<Rational> num;
    for (int e = v; e <= l.top_degree(); ++e) num.push_back(l.coeff(e));
    Poly n(std::move(num));
    if (v >= 0) return RationalFunction(n * Poly::monomial(v), Poly(Rational(1)));
    return RationalFunction(n, Poly::monomial(-v));
}

} // namespace holorel
