#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "protoshape/errors.hpp"

namespace protoshape {

using Int = boost::multiprecision::cpp_int;

/// Dense matrix over arbitrary-precision integers.
class IntegerMatrix {
public:
    IntegerMatrix() : rows_(0), cols_(0) {}

    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    IntegerMatrix operator*(const IntegerMatrix& rhs) const {
        if (cols_ != rhs.rows_) throw Mismatch("matrix product dimension mismatch");
        IntegerMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& v = at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out.at(i, j) += v * rhs.at(k, j);
            }
        return out;
    }

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    friend bool operator!=(const IntegerMatrix& a, const IntegerMatrix& b) {
        return !(a == b);
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

/// left * input * right = d, with unimodular transforms. The inverse
/// transforms are accumulated alongside, so callers can change basis in both
/// directions without inverting anything.
struct SmithDecomposition {
    IntegerMatrix d;
    IntegerMatrix left, left_inv;
    IntegerMatrix right, right_inv;
    int left_det = 1;
    int right_det = 1;

    std::size_t rank() const {
        std::size_t r = 0;
        const std::size_t n = std::min(d.rows(), d.cols());
        while (r < n && d.at(r, r) != 0) ++r;
        return r;
    }

    /// Nonzero diagonal entries d_1 | d_2 | ...
    std::vector<Int> invariant_factors() const {
        std::vector<Int> out;
        for (std::size_t r = 0; r < rank(); ++r) out.push_back(d.at(r, r));
        return out;
    }
};

namespace detail {

struct SnfState {
    IntegerMatrix d, left, left_inv, right, right_inv;
    int left_det = 1, right_det = 1;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < left.cols(); ++j) std::swap(left.at(a, j), left.at(b, j));
        for (std::size_t i = 0; i < left_inv.rows(); ++i)
            std::swap(left_inv.at(i, a), left_inv.at(i, b));
        left_det = -left_det;
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < right.rows(); ++i) std::swap(right.at(i, a), right.at(i, b));
        for (std::size_t j = 0; j < right_inv.cols(); ++j)
            std::swap(right_inv.at(a, j), right_inv.at(b, j));
        right_det = -right_det;
    }

    // row_i -= q * row_s
    void add_row(std::size_t i, std::size_t s, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) -= q * d.at(s, j);
        for (std::size_t j = 0; j < left.cols(); ++j) left.at(i, j) -= q * left.at(s, j);
        for (std::size_t r = 0; r < left_inv.rows(); ++r)
            left_inv.at(r, s) += q * left_inv.at(r, i);
    }

    // col_j -= q * col_s
    void add_col(std::size_t j, std::size_t s, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, j) -= q * d.at(i, s);
        for (std::size_t i = 0; i < right.rows(); ++i) right.at(i, j) -= q * right.at(i, s);
        for (std::size_t c = 0; c < right_inv.cols(); ++c)
            right_inv.at(s, c) += q * right_inv.at(j, c);
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) = -d.at(i, j);
        for (std::size_t j = 0; j < left.cols(); ++j) left.at(i, j) = -left.at(i, j);
        for (std::size_t r = 0; r < left_inv.rows(); ++r)
            left_inv.at(r, i) = -left_inv.at(r, i);
        left_det = -left_det;
    }
};

} // namespace detail

/// Smith normal form with deterministic pivoting: at each step the entry of
/// smallest nonzero absolute value in the trailing submatrix is chosen
/// (row-major scan, strict improvement), moved to the pivot position, and
/// used for Euclidean elimination until it divides everything it meets.
/// The result is re-verified (left*m*right == d) before returning.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
    detail::SnfState st;
    st.d = m;
    st.left = IntegerMatrix::identity(m.rows());
    st.left_inv = IntegerMatrix::identity(m.rows());
    st.right = IntegerMatrix::identity(m.cols());
    st.right_inv = IntegerMatrix::identity(m.cols());

    const std::size_t bound = std::min(m.rows(), m.cols());
    for (std::size_t s = 0; s < bound; ++s) {
        while (true) {
            // Smallest nonzero |entry| in d[s.., s..].
            std::size_t pi = s, pj = s;
            Int best = 0;
            for (std::size_t i = s; i < st.d.rows(); ++i)
                for (std::size_t j = s; j < st.d.cols(); ++j) {
                    const Int& v = st.d.at(i, j);
                    if (v == 0) continue;
                    Int a = abs(v);
                    if (best == 0 || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) {
                s = bound; // trailing submatrix is zero
                break;
            }
            st.swap_rows(s, pi);
            st.swap_cols(s, pj);

            bool reduced = true;
            for (std::size_t i = s + 1; i < st.d.rows(); ++i) {
                if (st.d.at(i, s) == 0) continue;
                Int q = st.d.at(i, s) / st.d.at(s, s);
                st.add_row(i, s, q);
                if (st.d.at(i, s) != 0) reduced = false;
            }
            for (std::size_t j = s + 1; j < st.d.cols(); ++j) {
                if (st.d.at(s, j) == 0) continue;
                Int q = st.d.at(s, j) / st.d.at(s, s);
                st.add_col(j, s, q);
                if (st.d.at(s, j) != 0) reduced = false;
            }
            if (!reduced) continue; // smaller remainders appeared; re-pivot

            // Divisibility: the pivot must divide the rest of the submatrix.
            bool divides = true;
            for (std::size_t i = s + 1; i < st.d.rows() && divides; ++i)
                for (std::size_t j = s + 1; j < st.d.cols() && divides; ++j)
                    if (st.d.at(i, j) % st.d.at(s, s) != 0) {
                        st.add_row(s, i, Int(-1)); // pull the offending row in
                        divides = false;
                    }
            if (divides) break;
        }
        if (s == bound) break;
        if (st.d.at(s, s) < 0) st.negate_row(s);
    }

    SmithDecomposition out;
    out.d = std::move(st.d);
    out.left = std::move(st.left);
    out.left_inv = std::move(st.left_inv);
    out.right = std::move(st.right);
    out.right_inv = std::move(st.right_inv);
    out.left_det = st.left_det;
    out.right_det = st.right_det;

    if (out.left * m * out.right != out.d)
        throw std::logic_error("smith_normal_form: transform verification failed");
    if (!(out.left * out.left_inv == IntegerMatrix::identity(m.rows())) ||
        !(out.right_inv * out.right == IntegerMatrix::identity(m.cols())))
        throw std::logic_error("smith_normal_form: inverse transform verification failed");
    for (std::size_t r = 0; r + 1 < out.rank(); ++r)
        if (out.d.at(r + 1, r + 1) % out.d.at(r, r) != 0)
            throw std::logic_error("smith_normal_form: divisibility chain broken");
    return out;
}

/// Columns of `right` past the rank: a lattice basis of ker(m) that spans it
/// as a direct summand of the ambient Z^cols.
inline IntegerMatrix kernel_lattice_basis(const SmithDecomposition& snf) {
    const std::size_t r = snf.rank();
    const std::size_t n = snf.right.rows();
    IntegerMatrix k(n, snf.right.cols() - r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r; j < snf.right.cols(); ++j) k.at(i, j - r) = snf.right.at(i, j);
    return k;
}

/// Integer coordinates of each column of v in the lattice spanned by the
/// columns of basis. Throws Mismatch when a column is not in the lattice.
inline IntegerMatrix lattice_coordinates(const IntegerMatrix& basis, const IntegerMatrix& v) {
    if (basis.rows() != v.rows()) throw Mismatch("lattice coordinate dimension mismatch");
    const std::size_t k = basis.cols();
    SmithDecomposition snf = smith_normal_form(basis);
    if (snf.rank() != k) throw Mismatch("lattice basis columns are not independent");

    // basis = left_inv * d * right_inv with d = [diag; 0]; solve per column.
    IntegerMatrix lv = snf.left * v;
    IntegerMatrix coords(k, v.cols());
    for (std::size_t c = 0; c < v.cols(); ++c) {
        for (std::size_t i = 0; i < k; ++i) {
            if (lv.at(i, c) % snf.d.at(i, i) != 0)
                throw Mismatch("vector is not in the lattice");
            coords.at(i, c) = lv.at(i, c) / snf.d.at(i, i);
        }
        for (std::size_t i = k; i < lv.rows(); ++i)
            if (lv.at(i, c) != 0) throw Mismatch("vector is not in the lattice span");
    }
    IntegerMatrix out = snf.right * coords;
    if (basis * out != v) throw std::logic_error("lattice_coordinates: verification failed");
    return out;
}

} // namespace protoshape
