#pragma once

#include "einl/errors.hpp"

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

namespace einl {

/// Dense matrix over an exact field F. Row-major storage.
template <class F>
class Matrix {
public:
    using Elem = typename F::Element;

    Matrix() requires std::default_initializable<F> : field_(), rows_(0), cols_(0) {}
    Matrix(F field, size_t rows, size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

    static Matrix identity(F field, size_t n) {
        Matrix m(field, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = m.field_.one();
        return m;
    }

    const F& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Elem& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const Elem& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    const std::vector<Elem>& data() const { return a_; }

    std::vector<Elem> row(size_t r) const {
        return std::vector<Elem>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
    }
    std::vector<Elem> col(size_t c) const {
        std::vector<Elem> out;
        out.reserve(rows_);
        for (size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
        return out;
    }
    void set_row(size_t r, const std::vector<Elem>& v) {
        for (size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
    }

    Matrix transpose() const {
        Matrix out(field_, cols_, rows_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    Matrix operator*(const Matrix& rhs) const {
        require_same_field(rhs);
        if (cols_ != rhs.rows_) throw UsageError("Matrix: product shape mismatch");
        Matrix out(field_, rows_, rhs.cols_);
        for (size_t r = 0; r < rows_; ++r) {
            for (size_t k = 0; k < cols_; ++k) {
                const Elem& x = at(r, k);
                if (field_.is_zero(x)) continue;
                for (size_t c = 0; c < rhs.cols_; ++c) {
                    out.at(r, c) = field_.add(out.at(r, c), field_.mul(x, rhs.at(k, c)));
                }
            }
        }
        return out;
    }

    Matrix operator+(const Matrix& rhs) const {
        require_same_field(rhs);
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw UsageError("Matrix: sum shape mismatch");
        Matrix out(field_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(a_[i], rhs.a_[i]);
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        require_same_field(rhs);
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw UsageError("Matrix: difference shape mismatch");
        Matrix out(field_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.sub(a_[i], rhs.a_[i]);
        return out;
    }

    Matrix scaled(const Elem& s) const {
        Matrix out = *this;
        for (auto& x : out.a_) x = field_.mul(x, s);
        return out;
    }

    std::vector<Elem> apply(const std::vector<Elem>& v) const {
        if (v.size() != cols_) throw UsageError("Matrix: apply length mismatch");
        std::vector<Elem> out(rows_, field_.zero());
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c)
                if (!field_.is_zero(at(r, c)))
                    out[r] = field_.add(out[r], field_.mul(at(r, c), v[c]));
        return out;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!field_.is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t i = 0; i < a.a_.size(); ++i)
            if (!a.field_.eq(a.a_[i], b.a_[i])) return false;
        return true;
    }

    struct RrefResult {
        Matrix reduced;
        size_t rank = 0;
        std::vector<size_t> pivots; // strictly increasing column indices
    };

    /// Reduced row echelon form: pivots are 1, pivot columns are elsewhere 0,
    /// zero rows at the bottom. Unique for a given row space.
    RrefResult rref() const {
        RrefResult res{*this, 0, {}};
        Matrix& m = res.reduced;
        size_t pr = 0;
        for (size_t c = 0; c < cols_ && pr < rows_; ++c) {
            size_t sel = pr;
            while (sel < rows_ && field_.is_zero(m.at(sel, c))) ++sel;
            if (sel == rows_) continue;
            if (sel != pr) m.swap_rows(sel, pr);
            const Elem inv_p = field_.inv(m.at(pr, c));
            for (size_t cc = c; cc < cols_; ++cc) m.at(pr, cc) = field_.mul(m.at(pr, cc), inv_p);
            for (size_t r = 0; r < rows_; ++r) {
                if (r == pr) continue;
                const Elem f = m.at(r, c);
                if (field_.is_zero(f)) continue;
                for (size_t cc = c; cc < cols_; ++cc)
                    m.at(r, cc) = field_.sub(m.at(r, cc), field_.mul(f, m.at(pr, cc)));
            }
            res.pivots.push_back(c);
            ++pr;
        }
        res.rank = pr;
        return res;
    }

    size_t rank() const { return rref().rank; }

    /// Basis of the null space {x : Mx = 0}, one vector per free column,
    /// in increasing free-column order.
    std::vector<std::vector<Elem>> kernel_basis() const {
        const RrefResult r = rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t p : r.pivots) is_pivot[p] = true;
        std::vector<std::vector<Elem>> basis;
        for (size_t free_c = 0; free_c < cols_; ++free_c) {
            if (is_pivot[free_c]) continue;
            std::vector<Elem> v(cols_, field_.zero());
            v[free_c] = field_.one();
            for (size_t i = 0; i < r.pivots.size(); ++i)
                v[r.pivots[i]] = field_.neg(r.reduced.at(i, free_c));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Inverse of a square invertible matrix; throws if singular.
    Matrix inverse() const {
        if (rows_ != cols_) throw UsageError("Matrix: inverse of non-square matrix");
        Matrix aug(field_, rows_, 2 * cols_);
        for (size_t r = 0; r < rows_; ++r) {
            for (size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_ + r) = field_.one();
        }
        const auto res = aug.rref();
        if (res.rank != rows_ || (rows_ > 0 && res.pivots[rows_ - 1] >= cols_))
            throw UsageError("Matrix: singular matrix has no inverse");
        Matrix out(field_, rows_, cols_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c) out.at(r, c) = res.reduced.at(r, cols_ + c);
        return out;
    }

    void swap_rows(size_t r1, size_t r2) {
        for (size_t c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
    }

    /// Rows of `top` followed by rows of `bottom`.
    static Matrix stack(const Matrix& top, const Matrix& bottom) {
        top.require_same_field(bottom);
        if (top.cols_ != bottom.cols_) throw UsageError("Matrix: stack width mismatch");
        Matrix out(top.field_, top.rows_ + bottom.rows_, top.cols_);
        for (size_t r = 0; r < top.rows_; ++r)
            for (size_t c = 0; c < top.cols_; ++c) out.at(r, c) = top.at(r, c);
        for (size_t r = 0; r < bottom.rows_; ++r)
            for (size_t c = 0; c < top.cols_; ++c) out.at(top.rows_ + r, c) = bottom.at(r, c);
        return out;
    }

    static Matrix from_rows(F field, size_t cols, const std::vector<std::vector<Elem>>& rows) {
        Matrix out(field, rows.size(), cols);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw UsageError("Matrix: row length mismatch");
            out.set_row(r, rows[r]);
        }
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (size_t r = 0; r < rows_; ++r) {
            s += "[";
            for (size_t c = 0; c < cols_; ++c) {
                if (c) s += " ";
                s += field_.to_string(at(r, c));
            }
            s += "]";
            if (r + 1 < rows_) s += "\n";
        }
        return s;
    }

private:
    F field_;
    size_t rows_;
    size_t cols_;
    std::vector<Elem> a_;

    void require_same_field(const Matrix& rhs) const {
        if (!(field_ == rhs.field_)) throw UsageError("Matrix: mixed fields");
    }
};

} // namespace einl
