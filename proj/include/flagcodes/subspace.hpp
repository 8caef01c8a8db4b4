#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace flagcodes {

// A subspace of K^n held by its canonical RREF basis (full row rank, rows
// are the basis). Canonicalization makes equality, ordering, and
// serialization bit-exact.
class Subspace {
  public:
    // Row space of an arbitrary generator matrix.
    static Subspace from_rows(const FieldMatrix& m) {
        auto red = rref(m);
        Subspace s;
        s.basis_ = red.reduced.block(0, red.rank, 0, m.cols());
        return s;
    }

    static Subspace zero(const FieldPtr& field, std::size_t n) {
        Subspace s;
        s.basis_ = FieldMatrix(field, 0, n);
        return s;
    }

    static Subspace full(const FieldPtr& field, std::size_t n) {
        Subspace s;
        s.basis_ = FieldMatrix::identity(field, n);
        return s;
    }

    // span of e_1..e_d
    static Subspace standard(const FieldPtr& field, std::size_t n, std::size_t d) {
        require(d <= n, Errc::ParameterOutOfRange, "dimension exceeds ambient");
        Subspace s;
        s.basis_ = FieldMatrix(field, d, n);
        for (std::size_t i = 0; i < d; ++i) s.basis_.at(i, i) = 1;
        return s;
    }

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient() const { return basis_.cols(); }
    const FieldMatrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }
    const FieldPtr& field_ptr() const { return basis_.field_ptr(); }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return basis_ != o.basis_; }
    bool operator<(const Subspace& o) const { return basis_ < o.basis_; }

    bool contains(const FieldMatrix& row_vector) const {
        require(row_vector.rows() == 1 && row_vector.cols() == ambient(), Errc::ShapeMismatch,
                "expected a single row vector in the ambient space");
        return rank(basis_.vstack(row_vector)) == dim();
    }

    bool contains(const Subspace& o) const {
        check_ambient(o);
        return rank(basis_.vstack(o.basis_)) == dim();
    }

    Subspace apply(const FieldMatrix& g) const {
        require(g.rows() == ambient() && g.cols() == ambient(), Errc::ShapeMismatch,
                "expected an ambient-sized square matrix");
        return from_rows(basis_ * g);
    }

    void check_ambient(const Subspace& o) const {
        require_same_field(field(), o.field());
        require(ambient() == o.ambient(), Errc::AmbientMismatch,
                "subspaces live in different ambient spaces");
    }

  private:
    Subspace() = default;
    FieldMatrix basis_;
};

inline Subspace sum(const Subspace& u, const Subspace& w) {
    u.check_ambient(w);
    return Subspace::from_rows(u.basis().vstack(w.basis()));
}

// Zassenhaus: reduce [U | U; W | 0]; rows whose left half vanishes have
// right halves spanning the intersection.
inline Subspace meet(const Subspace& u, const Subspace& w) {
    u.check_ambient(w);
    const std::size_t n = u.ambient();
    const auto& field = u.field_ptr();
    FieldMatrix stacked(field, u.dim() + w.dim(), 2 * n);
    stacked.set_block(0, 0, u.basis());
    stacked.set_block(0, n, u.basis());
    stacked.set_block(u.dim(), 0, w.basis());
    auto red = rref(stacked);
    std::size_t first_kernel_row = red.rank;
    for (std::size_t r = 0; r < red.rank; ++r)
        if (red.pivot_columns[r] >= n) {
            first_kernel_row = r;
            break;
        }
    return Subspace::from_rows(red.reduced.block(first_kernel_row, red.rank, n, 2 * n));
}

// dim(U meet W) without materializing the intersection.
inline std::size_t meet_dim(const Subspace& u, const Subspace& w) {
    u.check_ambient(w);
    return u.dim() + w.dim() - rank(u.basis().vstack(w.basis()));
}

}  // namespace flagcodes
