#pragma once

/*
 * Ore (skew) polynomial operators sum_i c_i(v) * del^i for a derivation del
 * acting on one of the variables x, t, w, either as the straight derivative
 * D = d/dv or as the Euler form delta = v*d/dv.  Composition uses the
 * commutation rule del o c = c o del + del(c); nothing here commutes unless
 * proven to.
 *
 * Variable changes (Euler form at infinity, ramification, exponential
 * conjugation) never normalize silently: results that are rescaled carry an
 * explicit unit factor c*v^k with (true image) = unit o (returned operator).
 */

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/laurent.hpp"
#include "holorel/linalg.hpp"
#include "holorel/poly.hpp"
#include "holorel/rational.hpp"
#include "holorel/ratfunc.hpp"
#include "holorel/truncseries.hpp"

namespace holorel {

enum class Deriv { D, Euler };
enum class Var { x, t, w };

struct DerivKind {
    Deriv deriv = Deriv::Euler;
    Var var = Var::x;

    friend bool operator==(const DerivKind& a, const DerivKind& b) {
        return a.deriv == b.deriv && a.var == b.var;
    }
    friend bool operator!=(const DerivKind& a, const DerivKind& b) { return !(a == b); }
};

inline std::string var_name(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::t: return "t";
        default: return "w";
    }
}

inline std::string deriv_symbol(const DerivKind& dk) {
    if (dk.deriv == Deriv::D) {
        switch (dk.var) {
            case Var::x: return "Dx";
            case Var::t: return "Dt";
            default: return "Dw";
        }
    }
    switch (dk.var) {
        case Var::x: return "delta";
        case Var::t: return "delta_t";
        default: return "delta_w";
    }
}

// Action of the derivation on a coefficient.
inline RationalFunction apply_deriv(const DerivKind& dk, const RationalFunction& c) {
    if (dk.deriv == Deriv::D) return c.derivative();
    return RationalFunction::variable() * c.derivative();
}
template <class C>
Laurent<C> apply_deriv(const DerivKind& dk, const Laurent<C>& c) {
    return dk.deriv == Deriv::Euler ? c.euler_derivative() : c.std_derivative();
}

template <class C>
class OreOp {
public:
    explicit OreOp(DerivKind dk) : dk_(dk) {}
    OreOp(DerivKind dk, std::vector<C> coeffs) : dk_(dk), c_(std::move(coeffs)) { trim(); }

    static OreOp derivation(DerivKind dk) { return OreOp(dk, {C(), C(1)}); }
    static OreOp multiplication(DerivKind dk, const C& f) { return OreOp(dk, {f}); }

    const DerivKind& kind() const { return dk_; }
    // Degree in the derivation; -1 for the zero operator.
    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const C& coeff(size_t i) const {
        static const C zero{};
        return i < c_.size() ? c_[i] : zero;
    }
    const C& leading() const {
        if (is_zero()) throw Error("zero operator");
        return c_.back();
    }
    const std::vector<C>& coeffs() const { return c_; }

    OreOp operator-() const {
        OreOp r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend OreOp operator+(const OreOp& a, const OreOp& b) {
        a.check_kind(b);
        std::vector<C> v(std::max(a.c_.size(), b.c_.size()));
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
        return OreOp(a.dk_, std::move(v));
    }
    friend OreOp operator-(const OreOp& a, const OreOp& b) { return a + (-b); }

    friend bool operator==(const OreOp& a, const OreOp& b) {
        return a.dk_ == b.dk_ && a.c_ == b.c_;
    }
    friend bool operator!=(const OreOp& a, const OreOp& b) { return !(a == b); }

    // Left multiplication by a function: scales every normal-form coefficient.
    OreOp left_mul(const C& f) const {
        OreOp r(*this);
        for (auto& x : r.c_) x = f * x;
        r.trim();
        return r;
    }

    OreOp& trim_self() { trim(); return *this; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void check_kind(const OreOp& o) const {
        if (dk_ != o.dk_) throw Error("operator derivation mismatch");
    }

    DerivKind dk_;
    std::vector<C> c_;

    template <class C2>
    friend OreOp<C2> op_compose(const OreOp<C2>&, const OreOp<C2>&);
};

// Composition a o b via del^i o c = expansion with the commutation rule.
template <class C>
OreOp<C> op_compose(const OreOp<C>& a, const OreOp<C>& b) {
    a.check_kind(b);
    if (a.is_zero() || b.is_zero()) return OreOp<C>(a.kind());
    // del_pow holds del^i o b in normal form; start with i = 0.
    std::vector<C> del_pow(b.c_);
    std::vector<C> acc(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i].is_zero())
            for (size_t j = 0; j < del_pow.size(); ++j)
                acc[j] = acc[j] + a.c_[i] * del_pow[j];
        if (i + 1 < a.c_.size()) {
            // del o (sum d_j del^j) = sum (d_j del^(j+1) + del(d_j) del^j).
            std::vector<C> next(del_pow.size() + 1);
            for (size_t j = 0; j < del_pow.size(); ++j) {
                next[j + 1] = next[j + 1] + del_pow[j];
                next[j] = next[j] + apply_deriv(a.kind(), del_pow[j]);
            }
            del_pow = std::move(next);
        }
    }
    return OreOp<C>(a.kind(), std::move(acc));
}

template <class C>
OreOp<C> op_pow(const OreOp<C>& a, unsigned long e) {
    OreOp<C> r = OreOp<C>::multiplication(a.kind(), C(1));
    for (unsigned long k = 0; k < e; ++k) r = op_compose(r, a);
    return r;
}

// Substitution del -> X for an operator X in the same algebra, evaluated by
// the noncommutative Horner scheme sum c_i X^i = (..(c_n X + c_{n-1}) X ..).
template <class C>
OreOp<C> op_substitute(const OreOp<C>& a, const OreOp<C>& x) {
    if (a.is_zero()) return OreOp<C>(a.kind());
    OreOp<C> r = OreOp<C>::multiplication(a.kind(), a.coeff(a.order()));
    for (int i = a.order() - 1; i >= 0; --i) {
        r = op_compose(r, x);
        r = r + OreOp<C>::multiplication(a.kind(), a.coeff(i));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Unit-factor bookkeeping for variable changes.

struct Unit {
    Rational coeff = Rational(1);
    int power = 0; // unit = coeff * v^power in the result's variable

    bool is_trivial() const { return coeff.is_one() && power == 0; }
    std::string str(const std::string& var) const {
        std::ostringstream os;
        os << coeff;
        if (power != 0) os << "*" << var << "^" << power;
        return os.str();
    }
};

template <class Op>
struct Scaled {
    Op op;
    Unit unit;
};

// Applies the recorded unit back: returns unit o op, coefficient-wise.
inline OreOp<RationalFunction> unscale(const Scaled<OreOp<RationalFunction>>& s) {
    RationalFunction u = RationalFunction(Poly(s.unit.coeff)) *
                         RationalFunction::variable().pow(s.unit.power);
    return s.op.left_mul(u);
}

// ---------------------------------------------------------------------------
// Conversion between D-form and Euler form over the same variable.

namespace detail {

// delta^i = sum_j S2(i,j) x^j D^j (Stirling set numbers).
inline std::vector<std::vector<Rational>> stirling2(int n) {
    std::vector<std::vector<Rational>> s(n + 1, std::vector<Rational>(n + 1));
    s[0][0] = Rational(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            if (s[i][j].is_zero()) continue;
            s[i + 1][j] += Rational(static_cast<long>(j)) * s[i][j];
            s[i + 1][j + 1] += s[i][j];
        }
    return s;
}

// Falling factorial delta(delta-1)...(delta-j+1) as a polynomial in delta.
inline Poly falling_factorial(int j) {
    Poly p(Rational(1));
    for (int l = 0; l < j; ++l)
        p *= Poly(std::vector<Rational>{Rational(-l), Rational(1)});
    return p;
}

} // namespace detail

// Rewrites between sum a_i delta^i and sum b_j D^j over the same variable.
// Going to Euler form can introduce x^-j factors; the result is rescaled to
// minimum valuation 0 at the variable's origin and the scaling recorded.
inline Scaled<OreOp<RationalFunction>> op_convert(const OreOp<RationalFunction>& a,
                                                  Deriv target) {
    DerivKind out{target, a.kind().var};
    if (a.kind().deriv == target) return {a, Unit{}};
    if (a.is_zero()) return {OreOp<RationalFunction>(out), Unit{}};
    int n = a.order();
    RationalFunction x = RationalFunction::variable();
    std::vector<RationalFunction> res(n + 1);
    if (target == Deriv::D) {
        auto s2 = detail::stirling2(n);
        for (int i = 0; i <= n; ++i) {
            if (a.coeff(i).is_zero()) continue;
            for (int j = 0; j <= i; ++j)
                if (!s2[i][j].is_zero())
                    res[j] += a.coeff(i) * RationalFunction(Poly::monomial(j, s2[i][j]));
        }
        return {OreOp<RationalFunction>(out, std::move(res)), Unit{}};
    }
    // D -> Euler: D^j = x^-j * delta(delta-1)...(delta-j+1).
    for (int j = 0; j <= n; ++j) {
        if (a.coeff(j).is_zero()) continue;
        Poly ff = detail::falling_factorial(j);
        RationalFunction xj = x.pow(-j);
        for (int i = 0; i <= j; ++i)
            if (!ff.coeff(i).is_zero())
                res[i] += a.coeff(j) * xj * RationalFunction(Poly(ff.coeff(i)));
    }
    OreOp<RationalFunction> op(out, std::move(res));
    int m = 0;
    bool seen = false;
    for (int i = 0; i <= op.order(); ++i) {
        if (op.coeff(i).is_zero()) continue;
        int v = op.coeff(i).valuation_at_zero();
        m = seen ? std::min(m, v) : v;
        seen = true;
    }
    if (m >= 0) return {op, Unit{}};
    return {op.left_mul(x.pow(-m)), Unit{Rational(1), m}};
}

// ---------------------------------------------------------------------------
// Expansion at infinity: x = t^-1, delta_x = -delta_t (Euler form only).
// The result is rescaled so coefficients have minimum valuation 0 at t = 0
// and the leading coefficient's lowest term is positive; the unit c*t^k with
// (true image) = unit o (returned operator) is recorded.  Applying the map
// twice returns the original operator up to its units.

inline Scaled<OreOp<RationalFunction>> op_to_infinity(const OreOp<RationalFunction>& a) {
    if (a.kind().deriv != Deriv::Euler)
        throw Error("expansion at infinity requires Euler form");
    Var out_var;
    switch (a.kind().var) {
        case Var::x: out_var = Var::t; break;
        case Var::t: out_var = Var::x; break;
        default: throw Error("expansion at infinity undefined for ramified variable");
    }
    DerivKind out{Deriv::Euler, out_var};
    if (a.is_zero()) return {OreOp<RationalFunction>(out), Unit{}};
    std::vector<RationalFunction> res(a.order() + 1);
    for (int i = 0; i <= a.order(); ++i) {
        if (a.coeff(i).is_zero()) continue;
        res[i] = a.coeff(i).substitute_inverse();
        if (i % 2 == 1) res[i] = -res[i];
    }
    OreOp<RationalFunction> op(out, std::move(res));
    int m = 0;
    bool seen = false;
    for (int i = 0; i <= op.order(); ++i) {
        if (op.coeff(i).is_zero()) continue;
        int v = op.coeff(i).valuation_at_zero();
        m = seen ? std::min(m, v) : v;
        seen = true;
    }
    Unit unit{Rational(1), m};
    if (m != 0) op = op.left_mul(RationalFunction::variable().pow(-m));
    const RationalFunction& lead = op.leading();
    Rational low = lead.num().coeff(lead.num().valuation()) /
                   lead.den().coeff(lead.den().valuation());
    if (low.sign() < 0) {
        unit.coeff = Rational(-1);
        op = -op;
    }
    return {op, unit};
}

// ---------------------------------------------------------------------------
// Laurent-coefficient form, ramification, exponential conjugation.

inline OreOp<Laurent<Rational>> to_laurent_op(const OreOp<RationalFunction>& a) {
    std::vector<Laurent<Rational>> v;
    v.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) v.push_back(to_laurent(c));
    return OreOp<Laurent<Rational>>(a.kind(), std::move(v));
}

inline OreOp<RationalFunction> laurent_op_to_ratfunc(const OreOp<Laurent<Rational>>& a) {
    std::vector<RationalFunction> v;
    v.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) v.push_back(laurent_to_ratfunc(c));
    return OreOp<RationalFunction>(a.kind(), std::move(v));
}

// Operator after the ramification t = w^sigma (delta_t = delta_w / sigma).
struct RamifiedOp {
    OreOp<Laurent<Rational>> base{DerivKind{Deriv::Euler, Var::w}};
    unsigned sigma = 1;
};

inline RamifiedOp op_ramify(const OreOp<Laurent<Rational>>& a, unsigned sigma) {
    if (sigma == 0) throw Error("ramification index must be positive");
    if (a.kind().deriv != Deriv::Euler) throw Error("ramification requires Euler form");
    DerivKind out{Deriv::Euler, Var::w};
    std::vector<Laurent<Rational>> v;
    v.reserve(a.coeffs().size());
    Rational scale(1);
    Rational inv_sigma = Rational(1, static_cast<long>(sigma));
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        v.push_back(a.coeff(i).stretch(sigma) * scale);
        scale *= inv_sigma;
    }
    return RamifiedOp{OreOp<Laurent<Rational>>(out, std::move(v)), sigma};
}

inline RamifiedOp op_ramify(const OreOp<RationalFunction>& a, unsigned sigma) {
    return op_ramify(to_laurent_op(a), sigma);
}

inline OreOp<Laurent<Poly>> promote_symbolic(const OreOp<Laurent<Rational>>& a) {
    std::vector<Laurent<Poly>> v;
    v.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) {
        Laurent<Poly> l;
        if (!c.is_zero())
            for (int e = c.valuation(); e <= c.top_degree(); ++e)
                l += Laurent<Poly>::term(e, Poly(c.coeff(e)));
        v.push_back(std::move(l));
    }
    return OreOp<Laurent<Poly>>(a.kind(), std::move(v));
}

// Conjugation by exp(a * w^-h): substitutes delta_w -> delta_w - h*a*w^-h.
// Inverse of the conjugation by -a.
template <class C>
OreOp<C> conjugate_by_exp(const OreOp<C>& op, const C& a, long h = 1) {
    if (op.kind().var != Var::w || op.kind().deriv != Deriv::Euler)
        throw Error("exponential conjugation requires Euler form in w");
    C shift = (C(Rational(static_cast<long>(-h))) * a).shifted(-h); // -h*a*w^-h
    OreOp<C> x = OreOp<C>::derivation(op.kind()) +
                 OreOp<C>::multiplication(op.kind(), shift);
    return op_substitute(op, x);
}

inline RamifiedOp op_exp_conjugate(const RamifiedOp& r, const Rational& a, long h = 1) {
    Laurent<Rational> coeff(a);
    return RamifiedOp{conjugate_by_exp(r.base, coeff, h), r.sigma};
}

// Conjugation with a left symbolic: coefficients move to Q[a][w, w^-1].
struct SymbolicConjugate {
    OreOp<Laurent<Poly>> op{DerivKind{Deriv::Euler, Var::w}};
    unsigned sigma = 1;
};

inline SymbolicConjugate op_exp_conjugate_symbolic(const RamifiedOp& r, long h = 1) {
    Laurent<Poly> a(Poly::variable());
    return SymbolicConjugate{conjugate_by_exp(promote_symbolic(r.base), a, h), r.sigma};
}

// ---------------------------------------------------------------------------
// Companion matrix of a monic D-form operator: Y = (y, y', ..., y^(n-1)),
// Y' = A Y with ones on the superdiagonal.

inline Mat<RationalFunction> op_companion(const OreOp<RationalFunction>& a) {
    OreOp<RationalFunction> d = op_convert(a, Deriv::D).op;
    int n = d.order();
    if (n < 1) throw Error("companion matrix needs order >= 1");
    Mat<RationalFunction> m(n, n);
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = RationalFunction(Rational(1));
    const RationalFunction& lead = d.coeff(n);
    for (int j = 0; j < n; ++j) m(n - 1, j) = -(d.coeff(j) / lead);
    return m;
}

// ---------------------------------------------------------------------------
// Application to truncated series.  The result keeps as many orders as
// survive exactly: each D loses one order and denominator valuations lose
// their count; callers provide input with margin.

inline TruncSeries op_apply(const OreOp<RationalFunction>& a, const TruncSeries& f) {
    if (a.is_zero()) return TruncSeries::zero(f.order());
    long out_order = f.order();
    for (int i = 0; i <= a.order(); ++i) {
        const auto& c = a.coeff(i);
        if (c.is_zero()) continue;
        long cost = c.den().valuation() + (a.kind().deriv == Deriv::D ? i : 0);
        out_order = std::min(out_order, f.order() - cost);
    }
    if (out_order < 0) throw Error("series order too small for operator application");
    TruncSeries acc = TruncSeries::zero(out_order);
    TruncSeries der = f;
    for (int i = 0; i <= a.order(); ++i) {
        if (!a.coeff(i).is_zero())
            acc += der.mul_ratfunc(a.coeff(i)).truncated(out_order);
        if (i < a.order())
            der = a.kind().deriv == Deriv::Euler ? der.euler_derivative() : der.derivative();
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Printing.

namespace detail {

inline bool monomial_coeff(const RationalFunction& c, Rational& sign_mag_out, std::string& abs_str,
                           const std::string& var) {
    if (!c.is_polynomial()) return false;
    const Poly& p = c.num();
    if (p.is_zero() || p.valuation() != p.degree()) return false;
    Rational lead = p.leading();
    sign_mag_out = lead;
    Poly abs_p = Poly::monomial(p.degree(), lead.abs());
    abs_str = abs_p.str(var);
    return true;
}

} // namespace detail

inline std::string op_str(const OreOp<RationalFunction>& a) {
    if (a.is_zero()) return "0";
    const std::string var = var_name(a.kind().var);
    const std::string sym = deriv_symbol(a.kind());
    std::ostringstream os;
    bool first = true;
    for (int k = a.order(); k >= 0; --k) {
        const RationalFunction& c = a.coeff(k);
        if (c.is_zero()) continue;
        Rational lead;
        std::string abs_str;
        bool simple = detail::monomial_coeff(c, lead, abs_str, var);
        std::string joiner = " + ";
        std::string body;
        if (simple) {
            if (lead.sign() < 0) joiner = " - ";
            bool unit_coeff = abs_str == "1";
            if (k == 0)
                body = abs_str;
            else if (unit_coeff)
                body = sym + (k > 1 ? "^" + std::to_string(k) : "");
            else
                body = abs_str + "*" + sym + (k > 1 ? "^" + std::to_string(k) : "");
        } else {
            std::string cs = c.str(var);
            if (c.is_polynomial()) cs = "(" + cs + ")";
            body = (k == 0) ? cs : cs + "*" + sym + (k > 1 ? "^" + std::to_string(k) : "");
        }
        if (first) {
            if (joiner == " - ") os << "-";
            first = false;
        } else {
            os << joiner;
        }
        os << body;
    }
    return os.str();
}

template <class K>
std::string op_str_laurent(const OreOp<Laurent<K>>& a, const std::string& coeff_var = "a") {
    if (a.is_zero()) return "0";
    const std::string var = var_name(a.kind().var);
    const std::string sym = deriv_symbol(a.kind());
    std::ostringstream os;
    bool first = true;
    for (int k = a.order(); k >= 0; --k) {
        const Laurent<K>& c = a.coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c.str(var, coeff_var);
        if (k == 0) {
            os << "(" << cs << ")";
        } else {
            os << "(" << cs << ")*" << sym;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

} // namespace holorel
