#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "subspace.hpp"

namespace flagcodes {

// Row i is e_{pi(i)}, so right multiplication sends the i-th coordinate
// row to the pi(i)-th.
inline FieldMatrix permutation_matrix(const FieldPtr& field, const Permutation& pi) {
    FieldMatrix m(field, pi.degree(), pi.degree());
    for (std::size_t i = 0; i < pi.degree(); ++i) m.at(i, pi(i)) = 1;
    return m;
}

// Strictly increasing dimension list 1 <= d_1 < ... < d_m <= n-1.
class FlagType {
  public:
    FlagType(std::size_t n, std::vector<std::size_t> dims) : n_(n), dims_(std::move(dims)) {
        require(n_ >= 1, Errc::ParameterOutOfRange, "ambient dimension must be positive");
        require(!dims_.empty(), Errc::ParameterOutOfRange, "type needs at least one dimension");
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            require(dims_[i] >= 1 && dims_[i] <= n_ - 1, Errc::ParameterOutOfRange,
                    "type dimension outside 1..n-1");
            require(i == 0 || dims_[i - 1] < dims_[i], Errc::ParameterOutOfRange,
                    "type dimensions must strictly increase");
        }
    }

    static FlagType full(std::size_t n) {
        require(n >= 2, Errc::ParameterOutOfRange, "full type needs ambient dimension >= 2");
        std::vector<std::size_t> dims(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) dims[i] = i + 1;
        return FlagType(n, std::move(dims));
    }

    std::size_t ambient() const { return n_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return dims_.size(); }
    bool is_full() const { return dims_.size() == n_ - 1; }

    // Block sizes d_1, d_2-d_1, ..., n-d_m.
    Composition composition() const {
        std::vector<std::uint32_t> parts;
        std::size_t prev = 0;
        for (auto d : dims_) {
            parts.push_back(static_cast<std::uint32_t>(d - prev));
            prev = d;
        }
        parts.push_back(static_cast<std::uint32_t>(n_ - prev));
        return Composition(parts);
    }

    bool operator==(const FlagType& o) const { return n_ == o.n_ && dims_ == o.dims_; }
    bool operator!=(const FlagType& o) const { return !(*this == o); }

  private:
    std::size_t n_;
    std::vector<std::size_t> dims_;
};

// Strictly nested chain of subspaces matching a FlagType.
class Flag {
  public:
    Flag(FlagType type, std::vector<Subspace> members)
        : type_(std::move(type)), members_(std::move(members)) {
        require(members_.size() == type_.size(), Errc::TypeMismatch,
                "member count does not match type");
        for (std::size_t i = 0; i < members_.size(); ++i) {
            require(members_[i].ambient() == type_.ambient(), Errc::AmbientMismatch,
                    "member ambient does not match type");
            require(members_[i].dim() == type_.dims()[i], Errc::TypeMismatch,
                    "member dimension does not match type");
            if (i > 0) {
                members_[i - 1].check_ambient(members_[i]);
                require(members_[i].contains(members_[i - 1]), Errc::TypeMismatch,
                        "members are not nested");
            }
        }
    }

    const FlagType& type() const { return type_; }
    const std::vector<Subspace>& members() const { return members_; }
    const Subspace& member(std::size_t i) const { return members_.at(i); }
    std::size_t ambient() const { return type_.ambient(); }
    const Field& field() const { return members_.front().field(); }
    const FieldPtr& field_ptr() const { return members_.front().field_ptr(); }

    Flag apply(const FieldMatrix& g) const {
        require(is_invertible(g), Errc::SingularMatrix, "flag transport needs an invertible matrix");
        std::vector<Subspace> moved;
        moved.reserve(members_.size());
        for (const auto& m : members_) moved.push_back(m.apply(g));
        return Flag(type_, std::move(moved));
    }

    bool operator==(const Flag& o) const { return type_ == o.type_ && members_ == o.members_; }
    bool operator!=(const Flag& o) const { return !(*this == o); }
    bool operator<(const Flag& o) const { return members_ < o.members_; }

  private:
    FlagType type_;
    std::vector<Subspace> members_;
};

// Weakly nested chain; dimensions may repeat or be zero. What a receiver
// accumulates on a lossy channel.
class StutteringFlag {
  public:
    explicit StutteringFlag(std::vector<Subspace> members) : members_(std::move(members)) {
        require(!members_.empty(), Errc::ParameterOutOfRange, "need at least one member");
        for (std::size_t i = 1; i < members_.size(); ++i) {
            members_[i - 1].check_ambient(members_[i]);
            require(members_[i].contains(members_[i - 1]), Errc::TypeMismatch,
                    "members are not nested");
        }
    }

    const std::vector<Subspace>& members() const { return members_; }
    const Subspace& member(std::size_t i) const { return members_.at(i); }
    std::size_t size() const { return members_.size(); }
    std::size_t ambient() const { return members_.front().ambient(); }
    const Field& field() const { return members_.front().field(); }
    const FieldPtr& field_ptr() const { return members_.front().field_ptr(); }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        d.reserve(members_.size());
        for (const auto& m : members_) d.push_back(m.dim());
        return d;
    }

    bool operator==(const StutteringFlag& o) const { return members_ == o.members_; }
    bool operator!=(const StutteringFlag& o) const { return !(*this == o); }

  private:
    std::vector<Subspace> members_;
};

inline Flag standard_flag(const FieldPtr& field, const FlagType& type) {
    std::vector<Subspace> members;
    members.reserve(type.size());
    for (auto d : type.dims()) members.push_back(Subspace::standard(field, type.ambient(), d));
    return Flag(type, std::move(members));
}

// Member i is the span of the first d_i rows of g.
inline Flag flag_from_matrix(const FieldMatrix& g, const FlagType& type) {
    require(g.rows() == type.ambient() && g.cols() == type.ambient(), Errc::ShapeMismatch,
            "matrix shape does not match ambient dimension");
    require(is_invertible(g), Errc::SingularMatrix, "flag rows must be a basis");
    std::vector<Subspace> members;
    members.reserve(type.size());
    for (auto d : type.dims())
        members.push_back(Subspace::from_rows(g.block(0, d, 0, g.cols())));
    return Flag(type, std::move(members));
}

inline Flag apartment_flag(const FieldPtr& field, const Permutation& pi) {
    return flag_from_matrix(permutation_matrix(field, pi), FlagType::full(pi.degree()));
}

inline std::size_t grassmann_distance(const Flag& f, const Flag& g) {
    require(f.type() == g.type(), Errc::TypeMismatch, "flags have different types");
    require_same_field(f.field(), g.field());
    std::size_t total = 0;
    for (std::size_t i = 0; i < f.members().size(); ++i)
        total += f.member(i).dim() - meet_dim(f.member(i), g.member(i));
    return total;
}

// The permutation w with w(j) = i exactly when the (i, j) incidence cell
// jumps, i.e. dim(F_i ∩ G_j) - dim(F_{i-1} ∩ G_j) - dim(F_i ∩ G_{j-1})
// + dim(F_{i-1} ∩ G_{j-1}) = 1. For apartment flags this recovers
// pi^{-1} ∘ sigma.
inline Permutation relative_position(const Flag& f, const Flag& g) {
    require(f.type().is_full() && g.type().is_full(), Errc::NotFullFlag,
            "relative position needs full flags");
    require(f.type() == g.type(), Errc::TypeMismatch, "flags have different types");
    require_same_field(f.field(), g.field());
    const std::size_t n = f.ambient();
    std::vector<std::vector<std::size_t>> dims(n + 1, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            if (i == n)
                dims[i][j] = j;
            else if (j == n)
                dims[i][j] = i;
            else
                dims[i][j] = meet_dim(f.member(i - 1), g.member(j - 1));
        }
    std::vector<std::uint32_t> images(n, 0);
    std::vector<bool> row_used(n + 1, false);
    for (std::size_t j = 1; j <= n; ++j) {
        std::size_t hits = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            const std::size_t jump =
                dims[i][j] + dims[i - 1][j - 1] - dims[i - 1][j] - dims[i][j - 1];
            if (jump == 1) {
                require(!row_used[i], Errc::Internal, "incidence row hit twice");
                row_used[i] = true;
                images[j - 1] = static_cast<std::uint32_t>(i - 1);
                ++hits;
            } else {
                require(jump == 0, Errc::Internal, "incidence jump outside {0,1}");
            }
        }
        require(hits == 1, Errc::Internal, "incidence column without a jump");
    }
    return Permutation(images);
}

inline std::size_t gallery_distance(const Flag& f, const Flag& g) {
    return relative_position(f, g).length();
}

// Completes a partial flag to a full one: walk the members' canonical
// basis rows in order, keep each row that extends the span, then pad with
// standard basis vectors.
inline Flag flag_completion(const Flag& f) {
    const std::size_t n = f.ambient();
    FieldMatrix cur(f.field_ptr(), 0, n);
    auto extend = [&](const FieldMatrix& row) {
        auto candidate = cur.vstack(row);
        if (rank(candidate) == cur.rows() + 1) cur = std::move(candidate);
    };
    for (const auto& m : f.members())
        for (std::size_t r = 0; r < m.basis().rows(); ++r) extend(m.basis().row(r));
    for (std::size_t i = 0; i < n && cur.rows() < n; ++i) {
        FieldMatrix e(f.field_ptr(), 1, n);
        e.at(0, i) = 1;
        extend(e);
    }
    require(cur.rows() == n, Errc::Internal, "completion did not reach full rank");
    return flag_from_matrix(cur, FlagType::full(n));
}

// Relative position of same-type partial flags: the minimal-length
// double-coset representative of the full-flag relative position of their
// completions, with the Young subgroup on both sides given by the type's
// block sizes.
inline Permutation relative_position_coset(const Flag& f, const Flag& g) {
    require(f.type() == g.type(), Errc::TypeMismatch, "flags have different types");
    if (f.type().is_full()) return relative_position(f, g);
    const auto w = relative_position(flag_completion(f), flag_completion(g));
    return min_double_coset_rep(w, f.type().composition());
}

// Free coordinates of the unipotent part in the Bruhat normal form:
// below-diagonal cells (a, b) whose rows cross under pi^{-1}.
inline std::vector<std::pair<std::size_t, std::size_t>> bruhat_support(const Permutation& pi) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    const auto inv = pi.inverse();
    for (std::size_t a = 0; a < pi.degree(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (inv(a) < inv(b)) cells.emplace_back(a, b);
    return cells;
}

struct BruhatDecomposition {
    FieldMatrix b;
    Permutation pi;
    FieldMatrix u;
};

// Writes an invertible A as b * P * u with b lower triangular, P the
// permutation matrix of pi, and u lower unitriangular supported on
// bruhat_support(pi). The factorization is unique; the result is
// re-verified before returning.
inline BruhatDecomposition bruhat_decompose(const FieldMatrix& a) {
    const std::size_t n = a.rows();
    require(a.cols() == n, Errc::ShapeMismatch, "square matrix expected");
    require(is_invertible(a), Errc::SingularMatrix, "matrix is singular");
    const auto& field = a.field_ptr();
    const Field& k = a.field();

    FieldMatrix m = a;
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_of_row(n, kUnset);
    std::vector<std::size_t> row_of_pivot(n, kUnset);

    auto rightmost_nonzero = [&](std::size_t r) {
        for (std::size_t c = n; c-- > 0;)
            if (m.at(r, c)) return c;
        fail(Errc::Internal, "row vanished during decomposition");
    };

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = rightmost_nonzero(i);
        while (row_of_pivot[c] != kUnset) {
            m.add_scaled_row(i, row_of_pivot[c], k.neg(m.at(i, c)));
            c = rightmost_nonzero(i);
        }
        m.scale_row(i, k.inv(m.at(i, c)));
        pivot_of_row[i] = c;
        row_of_pivot[c] = i;
        for (std::size_t cc = c; cc-- > 0;)
            if (m.at(i, cc) && row_of_pivot[cc] != kUnset && row_of_pivot[cc] != i)
                m.add_scaled_row(i, row_of_pivot[cc], k.neg(m.at(i, cc)));
    }

    std::vector<std::uint32_t> images(pivot_of_row.begin(), pivot_of_row.end());
    Permutation pi{std::move(images)};
    FieldMatrix u(field, n, n);
    for (std::size_t col = 0; col < n; ++col) u.set_block(col, 0, m.row(row_of_pivot[col]));
    FieldMatrix b = a * inverse(m);

    for (std::size_t r = 0; r < n; ++r) {
        require(b.at(r, r) != 0, Errc::Internal, "triangular factor has zero diagonal");
        for (std::size_t c = r + 1; c < n; ++c)
            require(b.at(r, c) == 0, Errc::Internal, "triangular factor not lower triangular");
    }
    const auto inv_pi = pi.inverse();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (r == c) {
                require(u.at(r, c) == 1, Errc::Internal, "unipotent factor diagonal not 1");
            } else if (u.at(r, c)) {
                require(r > c && inv_pi(r) < inv_pi(c), Errc::Internal,
                        "unipotent factor outside its support");
            }
        }
    require(b * permutation_matrix(field, pi) * u == a, Errc::Internal,
            "decomposition does not reproduce the input");
    return {std::move(b), std::move(pi), std::move(u)};
}

// All full flags at relative position pi from the standard flag. There are
// exactly q^length(pi) of them, one per assignment of field values to
// bruhat_support(pi).
inline std::vector<Flag> circle_enumerate(const Permutation& pi, const FieldPtr& field) {
    const std::size_t n = pi.degree();
    const auto cells = bruhat_support(pi);
    const std::uint64_t q = field->q();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        count *= q;
        require(count <= 100000, Errc::TooLarge, "circle has more than 100000 flags");
    }
    const auto pmat = permutation_matrix(field, pi);
    const auto full = FlagType::full(n);
    std::vector<Flag> flags;
    flags.reserve(static_cast<std::size_t>(count));
    std::vector<std::uint32_t> digits(cells.size(), 0);
    for (std::uint64_t it = 0; it < count; ++it) {
        FieldMatrix u = FieldMatrix::identity(field, n);
        for (std::size_t i = 0; i < cells.size(); ++i) u.at(cells[i].first, cells[i].second) = digits[i];
        flags.push_back(flag_from_matrix(pmat * u, full));
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < q) break;
            digits[i] = 0;
        }
    }
    return flags;
}

namespace detail {

inline void write_flag_header(std::ostream& os, std::size_t n, std::uint64_t q,
                              const std::vector<std::size_t>& dims) {
    os << n << ' ' << q << " T=";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) os << ',';
        os << dims[i];
    }
    os << '\n';
}

struct FlagHeader {
    std::size_t n = 0;
    std::uint64_t q = 0;
    std::vector<std::size_t> dims;
};

inline FlagHeader read_flag_header(std::istream& is) {
    FlagHeader h;
    std::string tag;
    if (!(is >> h.n >> h.q >> tag)) fail(Errc::ParseError, "malformed flag header");
    if (tag.rfind("T=", 0) != 0) fail(Errc::ParseError, "flag header missing T= list");
    std::istringstream list(tag.substr(2));
    std::string item;
    while (std::getline(list, item, ',')) {
        try {
            h.dims.push_back(std::stoul(item));
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad dimension in T= list");
        }
    }
    if (h.dims.empty()) fail(Errc::ParseError, "empty T= list");
    return h;
}

inline FieldPtr field_for_header(const FlagHeader& h, FieldPtr field) {
    if (field) {
        require(field->q() == h.q, Errc::ParameterMismatch, "field order conflicts with header");
        return field;
    }
    return Field::of_order(h.q);
}

inline std::vector<Subspace> read_flag_members(std::istream& is, const FlagHeader& h,
                                               const FieldPtr& field) {
    std::vector<Subspace> members;
    members.reserve(h.dims.size());
    for (auto d : h.dims) {
        auto m = read_matrix(is, field);
        if (m.rows() != d || m.cols() != h.n) fail(Errc::ParseError, "member shape mismatch");
        members.push_back(Subspace::from_rows(m));
        require(members.back().dim() == d, Errc::ParseError, "member rows are dependent");
    }
    return members;
}

}  // namespace detail

inline void write_flag(std::ostream& os, const Flag& f) {
    detail::write_flag_header(os, f.ambient(), f.field().q(), f.type().dims());
    for (const auto& m : f.members()) write_matrix(os, m.basis());
}

inline void write_flag(std::ostream& os, const StutteringFlag& f) {
    detail::write_flag_header(os, f.ambient(), f.field().q(), f.dims());
    for (const auto& m : f.members()) write_matrix(os, m.basis());
}

inline Flag read_flag(std::istream& is, FieldPtr field = nullptr) {
    const auto h = detail::read_flag_header(is);
    auto fld = detail::field_for_header(h, std::move(field));
    for (std::size_t i = 1; i < h.dims.size(); ++i)
        if (h.dims[i - 1] >= h.dims[i]) fail(Errc::ParseError, "flag dimensions must increase");
    if (h.dims.front() < 1 || h.dims.back() > h.n - 1 || h.n < 1)
        fail(Errc::ParseError, "flag dimensions outside 1..n-1");
    auto members = detail::read_flag_members(is, h, fld);
    return Flag(FlagType(h.n, h.dims), std::move(members));
}

inline StutteringFlag read_stuttering_flag(std::istream& is, FieldPtr field = nullptr) {
    const auto h = detail::read_flag_header(is);
    auto fld = detail::field_for_header(h, std::move(field));
    for (std::size_t i = 1; i < h.dims.size(); ++i)
        if (h.dims[i - 1] > h.dims[i]) fail(Errc::ParseError, "dimensions must not decrease");
    if (h.dims.back() > h.n) fail(Errc::ParseError, "dimension exceeds ambient");
    auto members = detail::read_flag_members(is, h, fld);
    return StutteringFlag(std::move(members));
}

inline std::string flag_to_string(const Flag& f) {
    std::ostringstream os;
    write_flag(os, f);
    return os.str();
}

inline std::string flag_to_string(const StutteringFlag& f) {
    std::ostringstream os;
    write_flag(os, f);
    return os.str();
}

inline Flag flag_from_string(const std::string& s, FieldPtr field = nullptr) {
    std::istringstream is(s);
    return read_flag(is, std::move(field));
}

inline StutteringFlag stuttering_flag_from_string(const std::string& s, FieldPtr field = nullptr) {
    std::istringstream is(s);
    return read_stuttering_flag(is, std::move(field));
}

}  // namespace flagcodes
