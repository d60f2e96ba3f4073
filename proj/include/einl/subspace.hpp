#pragma once
#include <concepts>

#include "einl/matrix.hpp"

#include <cstdint>
#include <vector>

namespace einl {

/// Subspace of F^n held in canonical form: the stored basis is the reduced
/// row echelon form of any spanning set, so equal subspaces compare equal.
template <class F>
class Subspace {
public:
    using Elem = typename F::Element;
    using Mat = Matrix<F>;

    Subspace() requires std::default_initializable<Mat> : ambient_(0) {}

    static Subspace zero(F field, size_t ambient) {
        return Subspace(ambient, Mat(field, 0, ambient));
    }

    static Subspace full(F field, size_t ambient) {
        return Subspace(ambient, Mat::identity(field, ambient));
    }

    static Subspace span(F field, size_t ambient, const std::vector<std::vector<Elem>>& vectors) {
        for (const auto& v : vectors)
            if (v.size() != ambient) throw UsageError("Subspace: vector/ambient dimension mismatch");
        return from_spanning_matrix(Mat::from_rows(field, ambient, vectors));
    }

    static Subspace from_spanning_matrix(const Mat& m) {
        const auto r = m.rref();
        Mat basis(m.field(), r.rank, m.cols());
        for (size_t i = 0; i < r.rank; ++i)
            for (size_t c = 0; c < m.cols(); ++c) basis.at(i, c) = r.reduced.at(i, c);
        return Subspace(m.cols(), std::move(basis));
    }

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    const F& field() const { return basis_.field(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    /// Residue of v after subtracting its projection onto the stored basis;
    /// zero exactly when v lies in the subspace.
    std::vector<Elem> reduce(std::vector<Elem> v) const {
        if (v.size() != ambient_) throw UsageError("Subspace: vector/ambient dimension mismatch");
        const F& f = field();
        for (size_t i = 0; i < basis_.rows(); ++i) {
            size_t p = pivot_of_row(i);
            if (f.is_zero(v[p])) continue;
            const Elem coef = v[p];
            for (size_t c = p; c < ambient_; ++c)
                v[c] = f.sub(v[c], f.mul(coef, basis_.at(i, c)));
        }
        return v;
    }

    bool contains(const std::vector<Elem>& v) const {
        const F& f = field();
        for (const Elem& x : reduce(v))
            if (!f.is_zero(x)) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        require_compatible(other);
        for (size_t r = 0; r < other.basis_.rows(); ++r)
            if (!contains(other.basis_.row(r))) return false;
        return true;
    }

    Subspace sum(const Subspace& other) const {
        require_compatible(other);
        return from_spanning_matrix(Mat::stack(basis_, other.basis_));
    }

    /// Zassenhaus: row-reduce [B1 | B1; B2 | 0]; rows with zero left half carry
    /// an intersection basis in their right half.
    Subspace intersect(const Subspace& other) const {
        require_compatible(other);
        const F& f = field();
        const size_t n = ambient_;
        Mat z(f, dim() + other.dim(), 2 * n);
        for (size_t r = 0; r < dim(); ++r)
            for (size_t c = 0; c < n; ++c) {
                z.at(r, c) = basis_.at(r, c);
                z.at(r, n + c) = basis_.at(r, c);
            }
        for (size_t r = 0; r < other.dim(); ++r)
            for (size_t c = 0; c < n; ++c) z.at(dim() + r, c) = other.basis_.at(r, c);
        const auto res = z.rref();
        std::vector<std::vector<Elem>> rows;
        for (size_t r = 0; r < res.rank; ++r) {
            bool left_zero = true;
            for (size_t c = 0; c < n && left_zero; ++c)
                if (!f.is_zero(res.reduced.at(r, c))) left_zero = false;
            if (left_zero) {
                const std::vector<Elem> full_row = res.reduced.row(r);
                rows.push_back(std::vector<Elem>(full_row.begin() + n, full_row.end()));
            }
        }
        return span(f, n, rows);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    /// Flat encoding of the canonical basis, row-major; usable as a sort key.
    std::vector<Elem> encode() const { return basis_.data(); }

    std::string to_string() const {
        return "span rows of\n" + basis_.to_string();
    }

private:
    size_t ambient_;
    Mat basis_;

    Subspace(size_t ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {}

    size_t pivot_of_row(size_t r) const {
        const F& f = field();
        for (size_t c = 0; c < ambient_; ++c)
            if (!f.is_zero(basis_.at(r, c))) return c;
        throw InvariantViolation("Subspace: zero row in canonical basis");
    }

    void require_compatible(const Subspace& other) const {
        if (ambient_ != other.ambient_ || !(field() == other.field()))
            throw UsageError("Subspace: ambient space mismatch");
    }
};

/// True exactly when u + z = F^ambient and u meets z only in 0.
template <class F>
bool is_complement(const Subspace<F>& u, const Subspace<F>& z) {
    if (u.ambient() != z.ambient()) throw UsageError("is_complement: ambient mismatch");
    if (u.dim() + z.dim() != u.ambient()) return false;
    return u.sum(z).dim() == u.ambient();
}

} // namespace einl
