#pragma once

/*
 * Dense matrices over an exact field and exact Gaussian elimination.
 *
 * Pivoting is deterministic (first nonzero entry in column order), so
 * solve/nullspace results are bit-identical across runs.  Nullspace basis
 * vectors are scaled so their first nonzero entry is 1.
 */

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "holorel/error.hpp"

namespace holorel {

template <class F>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    Mat(size_t rows, size_t cols, std::vector<F> data)
        : r_(rows), c_(cols), a_(std::move(data)) {
        if (a_.size() != r_ * c_) throw Error("matrix shape mismatch");
    }

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }

    F& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const F& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix shape mismatch");
        Mat m(a.r_, a.c_);
        for (size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
        return m;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix shape mismatch");
        Mat m(a.r_, a.c_);
        for (size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
        return m;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw Error("matrix shape mismatch");
        Mat m(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
            }
        return m;
    }
    friend Mat operator*(const Mat& a, const F& s) {
        Mat m(a);
        for (auto& x : m.a_) x = x * s;
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Mat kronecker(const Mat& b) const {
        Mat m(r_ * b.r_, c_ * b.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) {
                if ((*this)(i, j).is_zero()) continue;
                for (size_t k = 0; k < b.r_; ++k)
                    for (size_t l = 0; l < b.c_; ++l)
                        m(i * b.r_ + k, j * b.c_ + l) = (*this)(i, j) * b(k, l);
            }
        return m;
    }

    F trace() const {
        if (r_ != c_) throw Error("matrix shape mismatch");
        F t{};
        for (size_t i = 0; i < r_; ++i) t = t + (*this)(i, i);
        return t;
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        if (v.size() != c_) throw Error("matrix shape mismatch");
        std::vector<F> out(r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j)
                if (!(*this)(i, j).is_zero()) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }

private:
    size_t r_, c_;
    std::vector<F> a_;
};

template <class F>
struct LinearSolveResult {
    bool consistent = false;
    std::vector<F> particular;            // empty when inconsistent
    std::vector<std::vector<F>> nullspace; // basis, possibly empty
};

namespace detail {

// Reduced row echelon form in place; returns the pivot column of each row.
template <class F>
std::vector<size_t> rref(Mat<F>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        F inv = F(1) / m(row, col);
        for (size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            F f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

// Basis of { v : M v = 0 }; each vector has first nonzero entry 1.
template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> m) {
    std::vector<size_t> pivots = detail::rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(m.cols());
        v[free] = F(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        // Normalize: first nonzero entry becomes 1.
        for (auto& x : v)
            if (!x.is_zero()) {
                F inv = F(1) / x;
                for (auto& y : v) y = y * inv;
                break;
            }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Exact solve of M x = b, reporting a particular solution plus the full
// nullspace basis, or inconsistency.
template <class F>
LinearSolveResult<F> linear_solve(const Mat<F>& m, const std::vector<F>& b) {
    if (b.size() != m.rows()) throw Error("matrix shape mismatch");
    Mat<F> aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<size_t> pivots = detail::rref(aug);
    LinearSolveResult<F> res;
    if (!pivots.empty() && pivots.back() == m.cols()) return res; // 0 = 1 row
    res.consistent = true;
    res.particular.assign(m.cols(), F{});
    for (size_t r = 0; r < pivots.size(); ++r) res.particular[pivots[r]] = aug(r, m.cols());
    res.nullspace = nullspace(Mat<F>(m));
    return res;
}

} // namespace holorel
