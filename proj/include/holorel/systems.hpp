#pragma once

/*
 * First-order systems Y' = A Y over Q(x) and the constructions of linear
 * algebra on them: direct sum, tensor (Kronecker sum), dual, symmetric
 * power, trace splitting.  Plus the Wronskian matrix over truncated series.
 *
 * Symmetric powers act on the degree-m monomials in the solution
 * coordinates, ordered lexicographically by exponent vector with the
 * e1-degree descending, so for n = 2 the basis reads
 * y1^m, y1^(m-1)*y2, ..., y2^m.
 */

#include <map>
#include <utility>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/linalg.hpp"
#include "holorel/ratfunc.hpp"
#include "holorel/truncseries.hpp"

namespace holorel {

struct DiffSystem {
    Mat<RationalFunction> A;

    DiffSystem() : A(0, 0) {}
    explicit DiffSystem(Mat<RationalFunction> m) : A(std::move(m)) {
        if (A.rows() != A.cols()) throw Error("system matrix must be square");
    }

    int dim() const { return static_cast<int>(A.rows()); }

    friend bool operator==(const DiffSystem& a, const DiffSystem& b) { return a.A == b.A; }
};

inline DiffSystem sys_direct_sum(const DiffSystem& a, const DiffSystem& b) {
    int n = a.dim(), m = b.dim();
    Mat<RationalFunction> r(n + m, n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a.A(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r(n + i, n + j) = b.A(i, j);
    return DiffSystem(std::move(r));
}

// Kronecker sum A (x) I + I (x) B: solved by componentwise products of
// solutions of the factors.
inline DiffSystem sys_tensor(const DiffSystem& a, const DiffSystem& b) {
    auto ia = Mat<RationalFunction>::identity(a.dim());
    auto ib = Mat<RationalFunction>::identity(b.dim());
    return DiffSystem(a.A.kronecker(ib) + ia.kronecker(b.A));
}

inline DiffSystem sys_dual(const DiffSystem& a) {
    Mat<RationalFunction> r = a.A.transpose();
    for (size_t i = 0; i < r.rows(); ++i)
        for (size_t j = 0; j < r.cols(); ++j) r(i, j) = -r(i, j);
    return DiffSystem(std::move(r));
}

namespace detail {

// Exponent vectors of total degree m in n variables, e1-degree descending
// then recursively on the remaining variables.
inline void monomials_rec(int n, int m, std::vector<long>& cur,
                          std::vector<std::vector<long>>& out) {
    if (n == 1) {
        cur.push_back(m);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = m; e >= 0; --e) {
        cur.push_back(e);
        monomials_rec(n - 1, m - e, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<long>> monomial_basis(int n, int m) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    monomials_rec(n, m, cur, out);
    return out;
}

} // namespace detail

// Induced derivation on Sym^m: differentiating a monomial replaces one
// factor y_k in turn by its derivative sum(A[k][l] * y_l).
inline DiffSystem sys_sym_power(const DiffSystem& s, unsigned m) {
    if (m < 1) throw Error("symmetric power needs m >= 1");
    int n = s.dim();
    if (n == 0) throw Error("symmetric power of the empty system");
    auto basis = detail::monomial_basis(n, static_cast<int>(m));
    std::map<std::vector<long>, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    Mat<RationalFunction> r(basis.size(), basis.size());
    for (size_t row = 0; row < basis.size(); ++row) {
        const auto& e = basis[row];
        for (int k = 0; k < n; ++k) {
            if (e[k] == 0) continue;
            for (int l = 0; l < n; ++l) {
                std::vector<long> f = e;
                f[k] -= 1;
                f[l] += 1;
                r(row, index.at(f)) = r(row, index.at(f)) +
                                      RationalFunction(Rational(e[k])) * s.A(k, l);
            }
        }
    }
    return DiffSystem(std::move(r));
}

// Group-level symmetric power: row e is the expansion of the product
// prod_k ((M Y)_k)^(e_k) in the monomial basis.  Sym^m(exp(cA)) and the
// exponential of c * sys_sym_power agree to first order in c.
template <class F>
Mat<F> group_sym_power(const Mat<F>& mat, unsigned m) {
    if (mat.rows() != mat.cols()) throw Error("symmetric power needs a square matrix");
    int n = static_cast<int>(mat.rows());
    auto basis = detail::monomial_basis(n, static_cast<int>(m));
    std::map<std::vector<long>, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    Mat<F> r(basis.size(), basis.size());
    for (size_t row = 0; row < basis.size(); ++row) {
        // Expand the product of linear forms as a map monomial -> coefficient.
        std::map<std::vector<long>, F> acc;
        acc.emplace(std::vector<long>(n, 0), F(Rational(1)));
        for (int k = 0; k < n; ++k) {
            for (long rep = 0; rep < basis[row][k]; ++rep) {
                std::map<std::vector<long>, F> next;
                for (const auto& [mono, c] : acc) {
                    for (int l = 0; l < n; ++l) {
                        if (mat(k, l).is_zero()) continue;
                        std::vector<long> f = mono;
                        f[l] += 1;
                        auto it = next.find(f);
                        if (it == next.end()) next.emplace(std::move(f), c * mat(k, l));
                        else it->second = it->second + c * mat(k, l);
                    }
                }
                acc = std::move(next);
            }
        }
        for (const auto& [mono, c] : acc) r(row, index.at(mono)) = c;
    }
    return r;
}

struct TraceSplit {
    RationalFunction trace_part; // tr(A)/n
    DiffSystem traceless;        // A - (tr(A)/n) * I, trace exactly 0
};

inline TraceSplit sys_trace_split(const DiffSystem& s) {
    int n = s.dim();
    if (n == 0) throw Error("trace split of the empty system");
    RationalFunction part = s.A.trace() / RationalFunction(Rational(n));
    Mat<RationalFunction> r = s.A;
    for (int i = 0; i < n; ++i) r(i, i) = r(i, i) - part;
    return TraceSplit{part, DiffSystem(std::move(r))};
}

namespace detail {

inline TruncSeries series_det(const std::vector<std::vector<TruncSeries>>& m, size_t sz,
                              std::vector<size_t> cols) {
    size_t row = sz - cols.size();
    if (cols.size() == 1) return m[row][cols[0]];
    TruncSeries acc = TruncSeries::zero(m[row][cols[0]].order());
    for (size_t i = 0; i < cols.size(); ++i) {
        std::vector<size_t> sub;
        for (size_t j = 0; j < cols.size(); ++j)
            if (j != i) sub.push_back(cols[j]);
        TruncSeries term = m[row][cols[i]] * series_det(m, sz, std::move(sub));
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace detail

struct WronskianResult {
    std::vector<std::vector<TruncSeries>> rows; // row i = i-th derivatives
    TruncSeries det;
};

// Wronskian of n series: rows are successive derivatives, so the result
// order drops by n-1; inputs must carry at least order + n - 1 terms.
inline WronskianResult wronskian(const std::vector<TruncSeries>& fs, int order) {
    size_t n = fs.size();
    if (n == 0) throw Error("wronskian of an empty list");
    for (const auto& f : fs)
        if (f.order() < order + static_cast<int>(n) - 1)
            throw Error("insufficient precision for wronskian");
    WronskianResult out;
    out.rows.push_back(fs);
    for (size_t i = 1; i < n; ++i) {
        std::vector<TruncSeries> row;
        row.reserve(n);
        for (const auto& f : out.rows.back()) row.push_back(f.derivative());
        out.rows.push_back(std::move(row));
    }
    std::vector<size_t> cols(n);
    for (size_t i = 0; i < n; ++i) cols[i] = i;
    out.det = detail::series_det(out.rows, n, std::move(cols)).truncated(order);
    return out;
}

} // namespace holorel
