#pragma once

/*
 * Newton polygon at the (t, delta_t) chart and determining monomials.
 *
 * For an operator with Laurent-monomial support {t^m delta_t^n} the polygon
 * is the convex hull of the quadrant union { (x, y) : x <= n, y >= m }.
 * Vertices are reported along the lower boundary from the left anchor
 * (0, m_min) to the rightmost support column, so slope multiplicities
 * (horizontal edge lengths) add up to the operator order.  Multiplying the
 * operator by a unit c*t^k translates the vertices by (0, k) and leaves the
 * slopes unchanged.
 *
 * Determining monomials for a slope h/sigma are found by ramifying t = w^sigma,
 * conjugating with exp(a * w^-h) for a symbolic a, and reading the lowest
 * w-order term of the delta_w^0 coefficient as a polynomial phi(a): its
 * nonzero roots of the shape scale * (root of unity) are the admissible
 * leading exponential coefficients.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/laurent.hpp"
#include "holorel/ore.hpp"
#include "holorel/poly.hpp"
#include "holorel/rational.hpp"

namespace holorel {

struct SlopeEntry {
    Rational slope;
    long multiplicity;

    friend bool operator==(const SlopeEntry& a, const SlopeEntry& b) {
        return a.slope == b.slope && a.multiplicity == b.multiplicity;
    }
};

struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices; // (delta-power, t-power), x ascending
    std::vector<SlopeEntry> slopes;              // strictly increasing slope values
};

inline NewtonPolygon newton_polygon(const OreOp<Laurent<Rational>>& op) {
    if (op.is_zero()) throw Error("zero operator");
    if (op.kind().deriv != Deriv::Euler)
        throw Error("newton polygon requires Euler form");
    // Maximal support points under (larger delta-power, smaller t-power).
    // For each delta-power present, only the minimal t-power matters.
    std::vector<std::pair<long, long>> cols; // (n, min m in column n)
    for (int i = 0; i <= op.order(); ++i) {
        if (op.coeff(i).is_zero()) continue;
        cols.emplace_back(i, op.coeff(i).valuation());
    }
    // Keep points not shadowed by a column further right with m no larger.
    std::vector<std::pair<long, long>> stair;
    long best = 0;
    bool seen = false;
    for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
        if (!seen || it->second < best) {
            stair.push_back(*it);
            best = it->second;
            seen = true;
        }
    }
    std::reverse(stair.begin(), stair.end()); // n ascending, m ascending
    // Lower-right convex chain over the staircase.
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : stair) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // Drop b when a->b->pt turns the wrong way (slope not increasing).
            auto cross = (b.first - a.first) * (pt.second - a.second) -
                         (pt.first - a.first) * (b.second - a.second);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    NewtonPolygon out;
    long m_min = stair.front().second;
    out.vertices.emplace_back(0, m_min);
    for (const auto& v : hull)
        if (v != out.vertices.back()) out.vertices.push_back(v);
    for (size_t k = 0; k + 1 < out.vertices.size(); ++k) {
        auto [x1, y1] = out.vertices[k];
        auto [x2, y2] = out.vertices[k + 1];
        out.slopes.push_back(SlopeEntry{Rational(y2 - y1, x2 - x1), x2 - x1});
    }
    return out;
}

inline NewtonPolygon newton_polygon(const OreOp<RationalFunction>& op) {
    return newton_polygon(to_laurent_op(op));
}

// ---------------------------------------------------------------------------
// Determining monomials.

// scale * zeta * t^(-slope) with zeta = exp(2*pi*i * zeta_num / zeta_den);
// canonical form has scale > 0 with the phase folded into zeta (reduced
// fraction in [0,1)), and the zero monomial is (0, 0/1, slope 0).
struct DeterminingMonomial {
    Rational scale;
    long zeta_num = 0;
    long zeta_den = 1;
    Rational slope;

    friend bool operator==(const DeterminingMonomial& a, const DeterminingMonomial& b) {
        return a.scale == b.scale && a.zeta_num == b.zeta_num && a.zeta_den == b.zeta_den &&
               a.slope == b.slope;
    }
    friend bool operator<(const DeterminingMonomial& a, const DeterminingMonomial& b) {
        if (a.slope != b.slope) return a.slope < b.slope;
        if (a.scale != b.scale) return a.scale < b.scale;
        return a.zeta_num * b.zeta_den < b.zeta_num * a.zeta_den;
    }
};

inline DeterminingMonomial canonical_monomial(Rational scale, long zeta_num, long zeta_den,
                                              Rational slope) {
    if (zeta_den <= 0) throw Error("root of unity needs positive order");
    if (scale.is_zero()) return DeterminingMonomial{Rational(0), 0, 1, Rational(0)};
    if (scale.sign() < 0) {
        scale = -scale;
        // Multiply by -1 = exp(2*pi*i * 1/2).
        zeta_num = 2 * zeta_num + zeta_den;
        zeta_den *= 2;
    }
    zeta_num %= zeta_den;
    if (zeta_num < 0) zeta_num += zeta_den;
    long g = std::gcd(zeta_num, zeta_den);
    if (zeta_num == 0) g = zeta_den;
    return DeterminingMonomial{scale, zeta_num / g, zeta_den / g, slope};
}

inline std::string monomial_str(const DeterminingMonomial& m) {
    if (m.scale.is_zero()) return "0";
    std::string s = m.scale.str();
    if (m.zeta_den != 1) {
        s += "*zeta(" + std::to_string(m.zeta_num) + "/" + std::to_string(m.zeta_den) + ")";
    }
    s += "*t^(-" + m.slope.str() + ")";
    return s;
}

struct DeterminingReport {
    Rational slope;
    unsigned sigma = 1;
    Poly char_poly;                            // polynomial in the symbol a, monic
    std::vector<DeterminingMonomial> monomials; // canonical, sorted
    std::optional<Poly> residual;              // factor with no scale*zeta roots
};

inline DeterminingReport determining_monomials(const OreOp<Laurent<Rational>>& op,
                                               const Rational& slope) {
    NewtonPolygon np = newton_polygon(op);
    bool found = false;
    for (const auto& s : np.slopes) found = found || (s.slope == slope);
    if (!found) throw Error("slope " + slope.str() + " is not a slope of the polygon");
    if (slope.sign() < 0) throw Error("slopes at infinity are nonnegative");

    DeterminingReport out;
    out.slope = slope;
    if (slope.is_zero()) {
        // Regular part: no exponential growth, nothing to determine.
        out.sigma = 1;
        out.char_poly = Poly(Rational(1));
        return out;
    }
    auto h = slope.num().get_si();
    auto sigma = slope.den().get_si();
    out.sigma = static_cast<unsigned>(sigma);
    RamifiedOp ram = op_ramify(op, out.sigma);
    SymbolicConjugate conj = op_exp_conjugate_symbolic(ram, h);
    Laurent<Poly> c0 = conj.op.coeff(0);
    if (c0.is_zero()) throw Error("zero operator");
    Poly phi = c0.lowest();
    out.char_poly = phi.monic();

    // Factor the pattern a^p * (a^sigma - s) with s having an exact rational
    // sigma-th root; anything else is reported unfactored.
    int val = out.char_poly.valuation();
    std::vector<Rational> rest(out.char_poly.coeffs().begin() + val,
                               out.char_poly.coeffs().end());
    Poly psi(std::move(rest));
    if (psi.is_constant()) return out; // only the zero root: no monomials
    bool binomial = psi.degree() == static_cast<int>(out.sigma);
    for (int i = 1; binomial && i < psi.degree(); ++i)
        binomial = psi.coeff(i).is_zero();
    std::optional<Rational> root;
    if (binomial) root = nth_root_exact(-psi.coeff(0) / psi.leading(), out.sigma);
    if (!binomial || !root) {
        out.residual = psi;
        return out;
    }
    for (long j = 0; j < static_cast<long>(out.sigma); ++j)
        out.monomials.push_back(canonical_monomial(*root, j, out.sigma, slope));
    std::sort(out.monomials.begin(), out.monomials.end());
    return out;
}

inline DeterminingReport determining_monomials(const OreOp<RationalFunction>& op,
                                               const Rational& slope) {
    return determining_monomials(to_laurent_op(op), slope);
}

// Determining list of Sym^m applied to the 0F1 base system, whose
// determining monomials are -2*x^(1/2) and 2*x^(1/2) (slope 1/2, sigma 2):
// the m+1 entries 2*(-m + 2i)*x^(1/2), i = 0..m.
inline std::vector<DeterminingMonomial> sym_power_determining_list(unsigned m) {
    std::vector<DeterminingMonomial> out;
    out.reserve(m + 1);
    Rational slope(1, 2);
    for (long i = 0; i <= static_cast<long>(m); ++i)
        out.push_back(canonical_monomial(Rational(2 * (-static_cast<long>(m) + 2 * i)), 0, 1,
                                         slope));
    std::sort(out.begin(), out.end());
    return out;
}

struct MatchResult {
    bool compatible = false;
    // Multiset of symmetric powers reconstructed from the candidate list,
    // when it parses as a disjoint union of Sym^m lists.
    std::optional<std::vector<unsigned>> forced;
};

// Decides whether `candidate` is a sub-multiset of `target` (both canonical).
inline MatchResult match_determining_lists(std::vector<DeterminingMonomial> candidate,
                                           std::vector<DeterminingMonomial> target) {
    MatchResult out;
    std::sort(candidate.begin(), candidate.end());
    std::sort(target.begin(), target.end());
    out.compatible = std::includes(target.begin(), target.end(),
                                   candidate.begin(), candidate.end());
    // Greedy reconstruction: peel the widest arithmetic progression first.
    std::vector<DeterminingMonomial> rest = candidate;
    std::vector<unsigned> ms;
    bool ok = true;
    while (ok && !rest.empty()) {
        Rational top(0);
        for (const auto& mono : rest) {
            if (mono.scale.is_zero()) continue;
            if (mono.zeta_den > 2) { ok = false; break; } // not a real value
            Rational v = mono.zeta_den == 2 ? -mono.scale : mono.scale;
            if (v.abs() > top) top = v.abs();
        }
        if (!ok) break;
        Rational m_rat = top / Rational(2);
        if (!m_rat.is_integer()) { ok = false; break; }
        long m = *m_rat.to_long();
        for (long i = 0; i <= m && ok; ++i) {
            DeterminingMonomial want = canonical_monomial(Rational(2 * (-m + 2 * i)), 0, 1,
                                                          m == 0 ? Rational(0) : Rational(1, 2));
            auto it = std::find(rest.begin(), rest.end(), want);
            if (it == rest.end()) ok = false;
            else rest.erase(it);
        }
        if (ok) ms.push_back(static_cast<unsigned>(m));
    }
    if (ok) {
        std::sort(ms.begin(), ms.end());
        out.forced = std::move(ms);
    }
    return out;
}

} // namespace holorel
