#pragma once

/*
 * Relation finders: logarithmic-derivative certificates, multiplicative
 * f^m g^n relations between solutions of first-order equations, rational
 * linear relations over a basis of series, polynomial expressions in a
 * single series, and iterated-integral dependence.
 *
 * Every positive answer is a certificate checked independently of the
 * search (exact identity or series agreement to the stated order); a
 * negative answer is always "none within these bounds", never a proof
 * of independence.
 */

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/holoseries.hpp"
#include "holorel/linalg.hpp"
#include "holorel/poly.hpp"
#include "holorel/ratfunc.hpp"
#include "holorel/rational.hpp"
#include "holorel/truncseries.hpp"

namespace holorel {

// ---------------------------------------------------------------------------
// Logarithmic derivatives.  r = u'/u for rational u iff r is strictly
// proper with simple poles and integer residues; then u = prod (x-r_i)^{e_i}.

struct LogDerivCertificate {
    bool is_logderiv = false;
    std::vector<std::pair<Rational, long>> witness; // (root, exponent), u = prod (x-r)^e
    std::string obstruction;                        // empty when is_logderiv
};

inline RationalFunction witness_ratfunc(const LogDerivCertificate& c) {
    RationalFunction u(Rational(1));
    for (const auto& [root, e] : c.witness) {
        Poly lin = Poly::variable() - Poly(root);
        u = u * RationalFunction(lin, Poly(Rational(1))).pow(e);
    }
    return u;
}

inline std::string witness_str(const LogDerivCertificate& c) {
    if (c.witness.empty()) return "1";
    std::string s;
    for (const auto& [root, e] : c.witness) {
        if (!s.empty()) s += "*";
        Poly lin = Poly::variable() - Poly(root);
        s += "(" + lin.str() + ")";
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline LogDerivCertificate logderiv_test(const RationalFunction& r) {
    LogDerivCertificate cert;
    if (r.is_zero()) {
        cert.is_logderiv = true;
        return cert;
    }
    auto [polypart, rem] = divmod(r.num(), r.den());
    if (!polypart.is_zero()) {
        cert.obstruction = "nonzero polynomial part";
        return cert;
    }
    RationalRoots rr = rational_roots(r.den());
    int total = 0;
    for (const auto& [root, mult] : rr.roots) total += mult;
    if (!rr.complete || total != r.den().degree())
        throw Error("irrational poles unsupported");
    for (const auto& [root, mult] : rr.roots) {
        if (mult > 1) {
            // num and den are coprime, so the pole order equals mult.
            cert.obstruction = "higher-order pole at x = " + root.str();
            return cert;
        }
    }
    Poly dden = r.den().derivative();
    for (const auto& [root, mult] : rr.roots) {
        Rational res = rem.eval(root) / dden.eval(root);
        if (!res.is_integer()) {
            cert.obstruction = "non-integer residue " + res.str() + " at x = " + root.str();
            return cert;
        }
        cert.witness.emplace_back(root, *res.to_long());
    }
    std::sort(cert.witness.begin(), cert.witness.end());
    cert.is_logderiv = true;
    return cert;
}

// ---------------------------------------------------------------------------
// Kolchin relations: given f'/f = a and g'/g = b, find coprime (m, n) with
// f^m g^n having rational logarithmic derivative m*a + n*b.

struct KolchinRelation {
    long m = 0;
    long n = 0;
    LogDerivCertificate witness; // certificate for m*a + n*b
};

namespace detail {

// Pairs (m, n) != (0, 0), gcd 1, first nonzero entry positive, ordered by
// max(|m|, |n|) then lexicographically.  The search order is part of the
// contract: the returned relation is the first hit.
inline std::vector<std::pair<long, long>> coprime_pairs(long bound) {
    std::vector<std::pair<long, long>> out;
    for (long k = 1; k <= bound; ++k) {
        if (k == 1) out.emplace_back(0, 1);
        for (long m = 1; m <= k; ++m) {
            for (long n = -k; n <= k; ++n) {
                if (std::max(m, std::labs(n)) != k) continue;
                if (std::gcd(m, std::labs(n)) != 1) continue;
                out.emplace_back(m, n);
            }
        }
    }
    return out;
}

} // namespace detail

// Exact cancellations m*a + n*b = 0 (u constant) take precedence over
// general logarithmic-derivative hits; within each class the first pair in
// coprime_pairs order wins.
inline std::optional<KolchinRelation> kolchin_detect(const RationalFunction& a,
                                                     const RationalFunction& b, long bound) {
    if (bound < 1) throw Error("search bound must be positive");
    for (const RationalFunction* r : {&a, &b}) {
        RationalRoots rr = rational_roots(r->den());
        int total = 0;
        for (const auto& [root, mult] : rr.roots) total += mult;
        if (!rr.complete || total != r->den().degree())
            throw Error("irrational poles unsupported");
    }
    std::optional<KolchinRelation> general;
    for (const auto& [m, n] : detail::coprime_pairs(bound)) {
        RationalFunction c = RationalFunction(Rational(m)) * a + RationalFunction(Rational(n)) * b;
        if (c.is_zero()) {
            LogDerivCertificate cert;
            cert.is_logderiv = true;
            return KolchinRelation{m, n, cert};
        }
        if (general) continue;
        LogDerivCertificate cert = logderiv_test(c);
        if (cert.is_logderiv) general = KolchinRelation{m, n, cert};
    }
    return general;
}

// ---------------------------------------------------------------------------
// Rational linear relations over a series basis.

struct LinearRelation {
    std::vector<RationalFunction> coefficients; // one per basis element
    RationalFunction remainder;
    long verified_order = 0;
};

namespace detail {

// Local polynomial (in u = x - base) -> polynomial in x.
inline Poly unshift(const Poly& p, const Rational& base) {
    return base.is_zero() ? p : p.shift(-base);
}

inline void check_margin(int d, size_t blocks, long order) {
    long unknowns = static_cast<long>(d + 1) * static_cast<long>(blocks);
    if (order < 2 * unknowns + 20) throw Error("underdetermined search");
}

// Coefficient of x^j in q*s restricted to deg q <= d: rows of the matching
// system.  Column layout per block of d+1 polynomial coefficients.
inline void fill_block(Mat<Rational>& m, long rows, size_t col0, int d,
                       const TruncSeries& s, const Rational& sign) {
    for (long j = 0; j < rows; ++j)
        for (int l = 0; l <= d && l <= j; ++l)
            m(j, col0 + l) = s.coeff(j - l) * sign;
}

} // namespace detail

// Seeks deg-<=d polynomials q, q_i, p with q*target = sum q_i*basis_i + p
// and q(base) != 0, matching series coefficients up to order N exactly.
// Escalates the degree from 0 so the simplest relation is returned.  The
// returned coefficients are q_i/q and p/q as rational functions in x.
inline std::optional<LinearRelation> linear_relation_find(const TruncSeries& target,
                                                          const std::vector<TruncSeries>& basis,
                                                          int d, long order,
                                                          const Rational& base = Rational(0)) {
    if (d < 0) throw Error("negative degree bound");
    detail::check_margin(d, basis.size() + 2, order);
    if (target.order() < order) throw Error("target series shorter than requested order");
    for (const auto& b : basis)
        if (b.order() < order) throw Error("basis series shorter than requested order");

    long rows = order + 1;
    for (int dd = 0; dd <= d; ++dd) {
        size_t cols = static_cast<size_t>(dd + 1) * (basis.size() + 2);
        Mat<Rational> m(rows, cols);
        detail::fill_block(m, rows, 0, dd, target, Rational(1));
        for (size_t i = 0; i < basis.size(); ++i)
            detail::fill_block(m, rows, (i + 1) * (dd + 1), dd, basis[i], Rational(-1));
        TruncSeries one = TruncSeries::constant(Rational(1), order);
        detail::fill_block(m, rows, (basis.size() + 1) * (dd + 1), dd, one, Rational(-1));
        for (const auto& v : nullspace(std::move(m))) {
            if (v[0].is_zero()) continue; // need q(base) != 0 in local coordinates
            auto block = [&](size_t b) {
                return Poly(std::vector<Rational>(v.begin() + b * (dd + 1),
                                                  v.begin() + (b + 1) * (dd + 1)));
            };
            Poly q = block(0);
            LinearRelation rel;
            RationalFunction qx(detail::unshift(q, base), Poly(Rational(1)));
            for (size_t i = 0; i < basis.size(); ++i)
                rel.coefficients.push_back(
                    RationalFunction(detail::unshift(block(i + 1), base), Poly(Rational(1))) / qx);
            rel.remainder =
                RationalFunction(detail::unshift(block(basis.size() + 1), base), Poly(Rational(1))) /
                qx;
            rel.verified_order = order;
            // Independent verification of the certificate.
            TruncSeries check = TruncSeries::from_poly(q, order) * target;
            for (size_t i = 0; i < basis.size(); ++i)
                check -= TruncSeries::from_poly(block(i + 1), order) * basis[i];
            check -= TruncSeries::from_poly(block(basis.size() + 1), order);
            if (!check.is_zero()) throw Error("relation failed verification");
            return rel;
        }
    }
    return std::nullopt;
}

inline std::optional<LinearRelation> linear_relation_find(const HoloSeries& target,
                                                          const std::vector<const HoloSeries*>& basis,
                                                          int d, long order) {
    std::vector<TruncSeries> bs;
    bs.reserve(basis.size());
    for (const HoloSeries* b : basis) bs.push_back(b->prefix(order));
    return linear_relation_find(target.prefix(order), bs, d, order);
}

// Homogeneous variant: u_1, ..., u_n not all zero and a remainder r with
// sum u_i * basis_i = r to the given order; used by the iterated-integral
// search.  Normalized so the first nonzero u_i has monic numerator.
inline std::optional<LinearRelation> linear_relation_homogeneous(
    const std::vector<TruncSeries>& basis, int d, long order,
    const Rational& base = Rational(0)) {
    if (d < 0) throw Error("negative degree bound");
    if (basis.empty()) throw Error("empty basis");
    detail::check_margin(d, basis.size() + 1, order);
    for (const auto& b : basis)
        if (b.order() < order) throw Error("basis series shorter than requested order");

    long rows = order + 1;
    for (int dd = 0; dd <= d; ++dd) {
        size_t cols = static_cast<size_t>(dd + 1) * (basis.size() + 1);
        Mat<Rational> m(rows, cols);
        for (size_t i = 0; i < basis.size(); ++i)
            detail::fill_block(m, rows, i * (dd + 1), dd, basis[i], Rational(1));
        TruncSeries one = TruncSeries::constant(Rational(1), order);
        detail::fill_block(m, rows, basis.size() * (dd + 1), dd, one, Rational(1));
        auto ns = nullspace(std::move(m));
        if (ns.empty()) continue;
        // A vector with all u_i = 0 would force p = 0 identically, hence
        // the zero vector; so any nullspace vector has some u_i != 0.
        const auto& v = ns.front();
        auto block = [&](size_t b) {
            return Poly(std::vector<Rational>(v.begin() + b * (dd + 1),
                                              v.begin() + (b + 1) * (dd + 1)));
        };
        std::vector<Poly> us(basis.size());
        for (size_t i = 0; i < basis.size(); ++i) us[i] = block(i);
        Poly p = block(basis.size());
        Rational scale(1);
        for (const auto& u : us)
            if (!u.is_zero()) {
                scale = detail::unshift(u, base).leading().inverse();
                break;
            }
        LinearRelation rel;
        for (const auto& u : us)
            rel.coefficients.emplace_back(detail::unshift(u, base) * scale, Poly(Rational(1)));
        rel.remainder = RationalFunction(-(detail::unshift(p, base) * scale), Poly(Rational(1)));
        rel.verified_order = order;
        TruncSeries check = TruncSeries::from_poly(p, order);
        for (size_t i = 0; i < basis.size(); ++i)
            check += TruncSeries::from_poly(us[i], order) * basis[i];
        if (!check.is_zero()) throw Error("relation failed verification");
        return rel;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Polynomial expressions g = P(f): coefficients of P returned lowest degree
// first; the constant term comes from the remainder slot of the linear
// search over the basis f, f^2, ..., f^d.

inline std::optional<std::vector<RationalFunction>> poly_in_f_find(const TruncSeries& g,
                                                                   const TruncSeries& f, int d,
                                                                   long order) {
    if (d < 1) throw Error("degree bound must be positive");
    std::vector<TruncSeries> basis;
    basis.reserve(d);
    TruncSeries power = f.truncated(order);
    for (int j = 1; j <= d; ++j) {
        basis.push_back(power);
        if (j < d) power *= f;
    }
    auto rel = linear_relation_find(g.truncated(order), basis, d, order);
    if (!rel) return std::nullopt;
    std::vector<RationalFunction> coeffs;
    coeffs.push_back(rel->remainder);
    for (auto& c : rel->coefficients) coeffs.push_back(std::move(c));
    while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
    return coeffs;
}

inline std::optional<std::vector<RationalFunction>> poly_in_f_find(const HoloSeries& g,
                                                                   const HoloSeries& f, int d,
                                                                   long order) {
    return poly_in_f_find(g.prefix(order), f.prefix(order), d, order);
}

// ---------------------------------------------------------------------------
// Iterated integrals: f defined by f^(depth) = h with the integration
// constants (values of the successive primitives at the base point) fixed
// in integration order.

struct IterIntInput {
    RationalFunction h;
    unsigned depth = 1;
    std::vector<Rational> constants;
};

// Searches for u_i in Q(x), not all zero, and r in Q(x) with
// sum u_i * f_i = r certified to the given order around the base point.
inline std::optional<LinearRelation> iterint_dependence(const std::vector<IterIntInput>& inputs,
                                                        const Rational& base, int d, long order) {
    if (inputs.empty()) throw Error("empty basis");
    std::vector<TruncSeries> fs;
    fs.reserve(inputs.size());
    for (const auto& in : inputs) {
        if (in.depth < 1) throw Error("depth must be positive");
        if (in.constants.size() != in.depth)
            throw Error("need one integration constant per depth");
        if (in.h.has_pole_at(base)) throw Error("singular base point");
        TruncSeries s = series_shift(in.h, base, order);
        for (unsigned k = 0; k < in.depth; ++k) s = s.primitive(in.constants[k]);
        fs.push_back(s.truncated(order));
    }
    return linear_relation_homogeneous(fs, d, order, base);
}

} // namespace holorel
