#pragma once

/*
 * Holonomic power series: exact series solutions of an Euler-form operator.
 *
 * The operator sum_i c_i(x) delta^i is regrouped as sum_j x^j p_j(delta);
 * acting on sum c_k x^k gives the recurrence
 *     p_0(k) c_k = - sum_{j>=1} p_j(k-j) c_{k-j}.
 * Initial conditions are required exactly at the nonnegative integer roots
 * of the indicial polynomial p_0; no logarithmic solutions are produced
 * (an inconsistent recurrence at a root is an error, not a log case).
 *
 * Coefficients are memoized.  Concurrent coefficient requests on one object
 * are serialized internally by a mutex.
 */

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/linalg.hpp"
#include "holorel/ore.hpp"
#include "holorel/poly.hpp"
#include "holorel/rational.hpp"
#include "holorel/ratfunc.hpp"
#include "holorel/truncseries.hpp"

namespace holorel {

class HoloSeries {
public:
    HoloSeries(OreOp<RationalFunction> op, std::map<long, Rational> initials)
        : op_(std::move(op)), initials_(std::move(initials)) {
        if (op_.kind().deriv != Deriv::Euler)
            throw Error("holonomic series engine requires Euler form");
        if (op_.is_zero()) throw Error("zero operator");
        build_delta_polys();
        check_initials();
    }

    const OreOp<RationalFunction>& annihilator() const { return op_; }
    const std::vector<Poly>& delta_polys() const { return pj_; }
    const std::vector<long>& indicial_integer_roots() const { return roots_; }

    Rational coefficient(long k) const {
        if (k < 0) return Rational(0);
        std::lock_guard<std::mutex> lock(mu_);
        extend(k);
        return cache_[k];
    }

    TruncSeries prefix(long order) const {
        std::lock_guard<std::mutex> lock(mu_);
        extend(order);
        return TruncSeries(std::vector<Rational>(cache_.begin(), cache_.begin() + order + 1));
    }

private:
    void build_delta_polys() {
        // Clear coefficient denominators; scaling the operator by a nonzero
        // polynomial does not change its solution space.
        Poly common(Rational(1));
        for (const auto& c : op_.coeffs())
            if (!c.is_zero()) common = poly_lcm(common, c.den());
        int max_x = 0;
        std::vector<Poly> cleared(op_.coeffs().size());
        for (size_t i = 0; i < cleared.size(); ++i) {
            if (op_.coeff(i).is_zero()) continue;
            cleared[i] = op_.coeff(i).num() * (common / op_.coeff(i).den());
            max_x = std::max(max_x, cleared[i].degree());
        }
        pj_.assign(max_x + 1, Poly());
        for (size_t i = 0; i < cleared.size(); ++i)
            for (int j = 0; j <= cleared[i].degree(); ++j)
                if (!cleared[i].coeff(j).is_zero())
                    pj_[j] += Poly::monomial(i, cleared[i].coeff(j));
        if (pj_[0].is_zero()) throw Error("degenerate leading delta-polynomial");
    }

    void check_initials() {
        RationalRoots rr = rational_roots(pj_[0]);
        if (!rr.complete) {
            // Only integer roots matter; an unfactorable remainder could in
            // principle hide one, so refuse rather than guess.
            throw Error("cannot certify indicial roots: unfactorable indicial polynomial");
        }
        for (const auto& [root, mult] : rr.roots)
            if (root.is_integer() && root.sign() >= 0) roots_.push_back(*root.to_long());
        for (long r : roots_)
            if (!initials_.count(r))
                throw Error("missing initial condition at indicial root " + std::to_string(r));
        for (const auto& [k, v] : initials_) {
            bool is_root = false;
            for (long r : roots_) is_root = is_root || (r == k);
            if (!is_root)
                throw Error("initial condition at non-root index " + std::to_string(k));
        }
    }

    void extend(long k) const {
        for (long m = static_cast<long>(cache_.size()); m <= k; ++m) {
            Rational rhs(0);
            for (size_t j = 1; j < pj_.size(); ++j) {
                long idx = m - static_cast<long>(j);
                if (idx < 0) continue;
                if (!cache_[idx].is_zero())
                    rhs += pj_[j].eval(Rational(idx)) * cache_[idx];
            }
            Rational p0 = pj_[0].eval(Rational(m));
            if (p0.is_zero()) {
                if (!rhs.is_zero())
                    throw Error("no power-series solution: obstruction at x^" +
                                std::to_string(m));
                cache_.push_back(initials_.at(m));
            } else {
                cache_.push_back(-rhs / p0);
            }
        }
    }

    OreOp<RationalFunction> op_;
    std::vector<Poly> pj_;
    std::vector<long> roots_;
    std::map<long, Rational> initials_;
    mutable std::vector<Rational> cache_;
    mutable std::mutex mu_;
};

inline HoloSeries series_from_operator(const OreOp<RationalFunction>& op,
                                       std::map<long, Rational> initials) {
    return HoloSeries(op, std::move(initials));
}

// Exact series solution of Y' = A Y at the ordinary point 0 with Y(0) = init.
inline std::vector<TruncSeries> series_solve_system(const Mat<RationalFunction>& a,
                                                    const std::vector<Rational>& init,
                                                    long order) {
    size_t n = a.rows();
    if (a.cols() != n) throw Error("matrix shape mismatch");
    if (init.size() != n) throw Error("matrix shape mismatch");
    if (order < 0) throw Error("series needs order >= 0");
    // Expand the matrix entries; entries must be finite at 0.
    std::vector<std::vector<Rational>> entry(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const RationalFunction& r = a(i, j);
            if (r.den().coeff(0).is_zero())
                throw Error("singular point; expand elsewhere via shift");
            entry[i * n + j] = TruncSeries::from_poly(r.num(), std::max<long>(order - 1, 0))
                                   .divided_by_unit(r.den())
                                   .coeffs();
        }
    std::vector<std::vector<Rational>> y(order + 1, std::vector<Rational>(n));
    y[0] = init;
    for (long k = 0; k < order; ++k) {
        std::vector<Rational> acc(n);
        for (long i = 0; i <= k; ++i)
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c) {
                    const Rational& av = entry[r * n + c][i];
                    if (!av.is_zero() && !y[k - i][c].is_zero())
                        acc[r] += av * y[k - i][c];
                }
        Rational inv(1, k + 1);
        for (size_t r = 0; r < n; ++r) y[k + 1][r] = acc[r] * inv;
    }
    std::vector<TruncSeries> out;
    out.reserve(n);
    for (size_t r = 0; r < n; ++r) {
        std::vector<Rational> coeffs(order + 1);
        for (long k = 0; k <= order; ++k) coeffs[k] = y[k][r];
        out.push_back(TruncSeries(std::move(coeffs)));
    }
    return out;
}

// Expansion of a rational function around x = base, in powers of s = x - base.
inline TruncSeries series_shift(const RationalFunction& f, const Rational& base, long order) {
    Poly num = f.num().shift(base);
    Poly den = f.den().shift(base);
    if (den.coeff(0).is_zero())
        throw Error("singular point; expand elsewhere via shift");
    return TruncSeries::from_poly(num, order).divided_by_unit(den);
}

// Application of an operator to a holonomic series, exact to `order`.
inline TruncSeries op_apply(const OreOp<RationalFunction>& a, const HoloSeries& f,
                            long order) {
    long margin = 0;
    for (int i = 0; i <= a.order(); ++i) {
        if (a.coeff(i).is_zero()) continue;
        long cost = a.coeff(i).den().valuation() + (a.kind().deriv == Deriv::D ? i : 0);
        margin = std::max(margin, cost);
    }
    return op_apply(a, f.prefix(order + margin)).truncated(order);
}

} // namespace holorel
