#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"
#include "rng.hpp"

namespace flagcodes {

// Dense row-major matrix over a Field. Entries are raw field encodings;
// the field handle travels with the matrix. Values are immutable in spirit:
// mutating accessors exist for construction, and every operation returns a
// fresh matrix.
class FieldMatrix {
  public:
    FieldMatrix() = default;

    FieldMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FieldMatrix identity(FieldPtr field, std::size_t n) {
        FieldMatrix m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static FieldMatrix from_rows(FieldPtr field, std::size_t rows, std::size_t cols,
                                 std::vector<std::uint32_t> entries) {
        require(entries.size() == rows * cols, Errc::ShapeMismatch, "entry count mismatch");
        FieldMatrix m(std::move(field), rows, cols);
        for (auto v : entries)
            require(v < m.field_->q(), Errc::ParameterOutOfRange, "entry out of field range");
        m.data_ = std::move(entries);
        return m;
    }

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& at(std::size_t r, std::size_t c) {
        require(r < rows_ && c < cols_, Errc::ShapeMismatch, "index out of range");
        return data_[r * cols_ + c];
    }
    std::uint32_t at(std::size_t r, std::size_t c) const {
        require(r < rows_ && c < cols_, Errc::ShapeMismatch, "index out of range");
        return data_[r * cols_ + c];
    }

    const std::vector<std::uint32_t>& entries() const { return data_; }

    bool operator==(const FieldMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ &&
               field_->equals(*o.field_);
    }
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

    // Lexicographic order on (rows, cols, entries); fields are assumed
    // compatible where ordering matters (codebooks, closure checks).
    bool operator<(const FieldMatrix& o) const {
        if (rows_ != o.rows_) return rows_ < o.rows_;
        if (cols_ != o.cols_) return cols_ < o.cols_;
        return data_ < o.data_;
    }

    bool is_zero() const {
        for (auto v : data_)
            if (v) return false;
        return true;
    }

    FieldMatrix operator+(const FieldMatrix& o) const {
        require_compatible(o);
        require(rows_ == o.rows_ && cols_ == o.cols_, Errc::ShapeMismatch, "addition shape");
        FieldMatrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->add(data_[i], o.data_[i]);
        return r;
    }

    FieldMatrix operator-(const FieldMatrix& o) const {
        require_compatible(o);
        require(rows_ == o.rows_ && cols_ == o.cols_, Errc::ShapeMismatch, "subtraction shape");
        FieldMatrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->sub(data_[i], o.data_[i]);
        return r;
    }

    FieldMatrix operator*(const FieldMatrix& o) const {
        require_compatible(o);
        require(cols_ == o.rows_, Errc::ShapeMismatch, "multiplication shape");
        FieldMatrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const std::uint32_t a = data_[i * cols_ + k];
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    auto& cell = r.data_[i * o.cols_ + j];
                    cell = field_->add(cell, field_->mul(a, o.data_[k * o.cols_ + j]));
                }
            }
        return r;
    }

    FieldMatrix scaled(std::uint32_t c) const {
        FieldMatrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->mul(data_[i], c);
        return r;
    }

    FieldMatrix negated() const {
        FieldMatrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->neg(data_[i]);
        return r;
    }

    FieldMatrix transposed() const {
        FieldMatrix r(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = data_[i * cols_ + j];
        return r;
    }

    // Rows [r0, r1) and columns [c0, c1).
    FieldMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        require(r0 <= r1 && r1 <= rows_ && c0 <= c1 && c1 <= cols_, Errc::ShapeMismatch,
                "block range out of bounds");
        FieldMatrix r(field_, r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) r.data_[(i - r0) * (c1 - c0) + (j - c0)] = data_[i * cols_ + j];
        return r;
    }

    void set_block(std::size_t r0, std::size_t c0, const FieldMatrix& b) {
        require_compatible(b);
        require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, Errc::ShapeMismatch,
                "block placement out of bounds");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + (c0 + j)] = b.data_[i * b.cols_ + j];
    }

    FieldMatrix row(std::size_t r) const { return block(r, r + 1, 0, cols_); }

    // Stacks `o` below this matrix.
    FieldMatrix vstack(const FieldMatrix& o) const {
        require_compatible(o);
        require(cols_ == o.cols_, Errc::ShapeMismatch, "vstack column mismatch");
        FieldMatrix r(field_, rows_ + o.rows_, cols_);
        r.set_block(0, 0, *this);
        r.set_block(rows_, 0, o);
        return r;
    }

    // Places `o` to the right of this matrix.
    FieldMatrix hstack(const FieldMatrix& o) const {
        require_compatible(o);
        require(rows_ == o.rows_, Errc::ShapeMismatch, "hstack row mismatch");
        FieldMatrix r(field_, rows_, cols_ + o.cols_);
        r.set_block(0, 0, *this);
        r.set_block(0, cols_, o);
        return r;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
    }

    void scale_row(std::size_t r, std::uint32_t c) {
        for (std::size_t j = 0; j < cols_; ++j)
            data_[r * cols_ + j] = field_->mul(data_[r * cols_ + j], c);
    }

    // row a += c * row b
    void add_scaled_row(std::size_t a, std::size_t b, std::uint32_t c) {
        for (std::size_t j = 0; j < cols_; ++j)
            data_[a * cols_ + j] =
                field_->add(data_[a * cols_ + j], field_->mul(c, data_[b * cols_ + j]));
    }

  private:
    void require_compatible(const FieldMatrix& o) const {
        require_same_field(*field_, *o.field_);
    }

    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> data_;
};

struct Rref {
    FieldMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;  // 0-based, strictly increasing
};

// Reduced row echelon form with left-to-right pivot scan. Deterministic:
// the pivot for each column is the first nonzero entry at or below the
// current row.
inline Rref rref(const FieldMatrix& m) {
    Rref out{m, 0, {}};
    FieldMatrix& a = out.reduced;
    const Field& f = m.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && a.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r) a.swap_rows(pivot, r);
        a.scale_row(r, f.inv(a.at(r, c)));
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && a.at(i, c) != 0) a.add_scaled_row(i, r, f.neg(a.at(i, c)));
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

inline std::size_t rank(const FieldMatrix& m) { return rref(m).rank; }

inline FieldMatrix inverse(const FieldMatrix& m) {
    require(m.rows() == m.cols(), Errc::ShapeMismatch, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    auto aug = m.hstack(FieldMatrix::identity(m.field_ptr(), n));
    auto red = rref(aug);
    require(red.rank == n && (n == 0 || red.pivot_columns[n - 1] == n - 1), Errc::SingularMatrix,
            "matrix is singular");
    return red.reduced.block(0, n, n, 2 * n);
}

inline bool is_invertible(const FieldMatrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Solves x * a = b for a row vector (or row-stacked right-hand sides) x.
inline FieldMatrix solve_row_system(const FieldMatrix& a, const FieldMatrix& b) {
    return b * inverse(a);
}

inline FieldMatrix random_matrix(const FieldPtr& field, std::size_t rows, std::size_t cols,
                                 Rng& rng) {
    FieldMatrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<std::uint32_t>(rng.below(field->q()));
    return m;
}

inline FieldMatrix random_invertible(const FieldPtr& field, std::size_t n, Rng& rng) {
    while (true) {
        auto m = random_matrix(field, n, n, rng);
        if (rank(m) == n) return m;
    }
}

// Matrix text format: first line "r c q", then r lines of c integer
// encodings. Round-trips bit-exactly; files always use the default modulus
// for non-prime q.
inline void write_matrix(std::ostream& os, const FieldMatrix& m) {
    os << m.rows() << ' ' << m.cols() << ' ' << m.field().q() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m.at(i, j);
        }
        os << '\n';
    }
}

inline std::string matrix_to_string(const FieldMatrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

inline FieldMatrix read_matrix(std::istream& is, FieldPtr field = nullptr) {
    std::size_t r = 0, c = 0;
    std::uint64_t q = 0;
    if (!(is >> r >> c >> q)) fail(Errc::ParseError, "matrix header expected");
    if (field) {
        require(field->q() == q, Errc::ParameterMismatch,
                "matrix field order " + std::to_string(q) + " does not match expected " +
                    std::to_string(field->q()));
    } else {
        field = Field::of_order(q);
    }
    FieldMatrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            std::uint64_t v = 0;
            if (!(is >> v)) fail(Errc::ParseError, "matrix entry expected");
            require(v < q, Errc::ParseError, "matrix entry out of field range");
            m.at(i, j) = static_cast<std::uint32_t>(v);
        }
    return m;
}

inline FieldMatrix matrix_from_string(const std::string& s, FieldPtr field = nullptr) {
    std::istringstream is(s);
    return read_matrix(is, std::move(field));
}

// The polynomial basis 1, t, ..., t^(k-1) of an extension field over its
// base, as element encodings.
inline std::vector<std::uint32_t> polynomial_basis(const Field& ext) {
    require(!ext.is_prime_field(), Errc::ParameterOutOfRange,
            "polynomial basis needs an extension field");
    const std::uint32_t k = ext.degree_over_base();
    std::vector<std::uint32_t> basis(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        std::vector<std::uint32_t> digits(k, 0);
        digits[i] = 1;
        basis[i] = ext.from_base_digits(digits);
    }
    return basis;
}

// Matrix of multiplication-by-alpha on the extension field, viewed as a
// vector space over its base field with the given ordered basis: row i
// holds the base-field coordinates of basis[i] * alpha. The map
// alpha -> matrix is linear, injective, and multiplicative.
inline FieldMatrix regular_representation(const FieldPtr& ext, std::uint32_t alpha,
                                          const std::vector<std::uint32_t>& basis) {
    require(!ext->is_prime_field(), Errc::ParameterOutOfRange,
            "regular representation needs an extension field");
    const std::uint32_t k = ext->degree_over_base();
    require(basis.size() == k, Errc::DependentBasis,
            "basis must have " + std::to_string(k) + " elements");
    const FieldPtr& base = ext->base();

    FieldMatrix b(base, k, k);
    for (std::uint32_t i = 0; i < k; ++i) {
        auto digits = ext->to_base_digits(basis[i]);
        for (std::uint32_t j = 0; j < k; ++j) b.at(i, j) = digits[j];
    }
    FieldMatrix binv;
    try {
        binv = inverse(b);
    } catch (const Error& e) {
        if (e.code() == Errc::SingularMatrix)
            fail(Errc::DependentBasis, "basis elements are linearly dependent");
        throw;
    }

    FieldMatrix v(base, k, k);
    for (std::uint32_t i = 0; i < k; ++i) {
        auto digits = ext->to_base_digits(ext->mul(basis[i], alpha));
        for (std::uint32_t j = 0; j < k; ++j) v.at(i, j) = digits[j];
    }
    return v * binv;
}

inline FieldMatrix regular_representation(const FieldPtr& ext, std::uint32_t alpha) {
    return regular_representation(ext, alpha, polynomial_basis(*ext));
}

}  // namespace flagcodes
