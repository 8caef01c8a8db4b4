#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "flags.hpp"
#include "matrix.hpp"
#include "mrd.hpp"

namespace flagcodes {

// A finite set of same-type flags, one invertible generator matrix per
// codeword. Codebooks are materialized eagerly and have no duplicates.
class FlagCode {
  public:
    FlagCode(FieldPtr field, FlagType type, std::string construction, std::size_t dim,
             std::optional<std::size_t> designed_distance, std::vector<FieldMatrix> generators)
        : field_(std::move(field)),
          type_(std::move(type)),
          construction_(std::move(construction)),
          dim_(dim),
          designed_distance_(designed_distance),
          generators_(std::move(generators)) {
        require(!generators_.empty(), Errc::EmptyCode, "code needs at least one generator");
        std::uint64_t expected = 1;
        for (std::size_t i = 0; i < dim_; ++i) {
            expected *= field_->q();
            require(expected <= kMaxCodewords, Errc::TooLarge, "codebook too large to enumerate");
        }
        require(generators_.size() == expected, Errc::Internal,
                "generator count does not match q^dim");
        codebook_.reserve(generators_.size());
        std::set<Flag> seen;
        for (const auto& g : generators_) {
            require_same_field(g.field(), *field_);
            codebook_.push_back(flag_from_matrix(g, type_));
            require(seen.insert(codebook_.back()).second, Errc::Internal,
                    "duplicate codeword flag");
        }
    }

    const FieldPtr& field() const { return field_; }
    const FlagType& type() const { return type_; }
    const std::string& construction() const { return construction_; }
    std::size_t dim() const { return dim_; }
    const std::optional<std::size_t>& designed_distance() const { return designed_distance_; }
    const std::vector<FieldMatrix>& generators() const { return generators_; }
    const std::vector<Flag>& codebook() const { return codebook_; }
    std::size_t size() const { return codebook_.size(); }

    static constexpr std::uint64_t kMaxCodewords = 1ull << 14;

  private:
    FieldPtr field_;
    FlagType type_;
    std::string construction_;
    std::size_t dim_;
    std::optional<std::size_t> designed_distance_;
    std::vector<FieldMatrix> generators_;
    std::vector<Flag> codebook_;
};

namespace detail {

inline std::size_t block_of(const std::vector<std::size_t>& dims, std::size_t n, std::size_t r) {
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (r < dims[i]) return i;
    (void)n;
    return dims.size();
}

}  // namespace detail

inline bool in_block_pattern(const FieldMatrix& g, const FlagType& type) {
    const std::size_t n = type.ambient();
    if (g.rows() != n || g.cols() != n) return false;
    const auto& dims = type.dims();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t bi = detail::block_of(dims, n, r);
            const std::size_t bj = detail::block_of(dims, n, c);
            if (bi > bj && g.at(r, c) != 0) return false;
            if (bi == bj && g.at(r, c) != (r == c ? 1u : 0u)) return false;
        }
    return true;
}

// Sum over the type's dimensions of the rank of the upper-right
// d x (n-d) submatrix. For block-unitriangular g this equals the
// grassmann distance between the standard flag and its translate by g;
// debug builds re-verify that on every call.
inline std::size_t ebar(const FieldMatrix& g, const FlagType& type) {
    require(g.rows() == type.ambient() && g.cols() == type.ambient(), Errc::ShapeMismatch,
            "matrix does not match the ambient dimension");
    require(in_block_pattern(g, type), Errc::ShapeMismatch,
            "matrix is not block unitriangular for this type");
    std::size_t total = 0;
    for (auto d : type.dims()) total += rank(g.block(0, d, d, type.ambient()));
#ifndef NDEBUG
    auto base = standard_flag(g.field_ptr(), type);
    require(total == grassmann_distance(base, base.apply(g)), Errc::Internal,
            "rank sum disagrees with the flag distance");
#endif
    return total;
}

// Type {k} code whose members are the row spaces of (I_k | c) for c in
// the rank-metric code.
inline FlagCode code_lifted(const MrdCode& c, std::size_t n) {
    const std::size_t k = c.rows();
    require(k >= 1 && c.cols() >= 1 && k + c.cols() == n, Errc::ShapeMismatch,
            "matrix code shape does not fit the ambient dimension");
    std::vector<FieldMatrix> gens;
    for (const auto& w : c.codewords()) {
        auto g = FieldMatrix::identity(c.field(), n);
        g.set_block(0, k, w);
        gens.push_back(std::move(g));
    }
    std::optional<std::size_t> dist;
    if (c.dim() >= 1) dist = c.min_rank();
    return FlagCode(c.field(), FlagType(n, {k}), "lifted", c.dim(), dist, std::move(gens));
}

// Type {m, 2m, 3m} code in dimension 4m built from an m x m and a
// 2m x 2m rank-metric code, each with dim = distance = side.
inline FlagCode code_sandwich(std::size_t m, const MrdCode& cm, const MrdCode& c2m) {
    require(m >= 1, Errc::ParameterOutOfRange, "m must be at least 1");
    require_same_field(*cm.field(), *c2m.field());
    require(cm.rows() == m && cm.cols() == m && cm.dim() == m && cm.designed_distance() == m,
            Errc::ParameterMismatch, "inner code must have side = dim = distance = m");
    require(c2m.rows() == 2 * m && c2m.cols() == 2 * m && c2m.dim() == 2 * m &&
                c2m.designed_distance() == 2 * m,
            Errc::ParameterMismatch, "outer code must have side = dim = distance = 2m");
    const std::size_t n = 4 * m;
    std::vector<FieldMatrix> gens;
    for (const auto& x : cm.codewords()) {
        auto s = FieldMatrix::identity(cm.field(), 2 * m);
        s.set_block(0, m, x);
        for (const auto& y : c2m.codewords()) {
            auto u = FieldMatrix::identity(cm.field(), n);
            u.set_block(0, 0, s);
            u.set_block(2 * m, 2 * m, s);
            u.set_block(0, 2 * m, y);
            gens.push_back(std::move(u));
        }
    }
    return FlagCode(cm.field(), FlagType(n, {m, 2 * m, 3 * m}), "sandwich", 3 * m, 2 * m,
                    std::move(gens));
}

// Full-type code in dimension 2^{t+1} whose generators nest recursively:
// level i places a codeword of the i-th rank-metric code in the upper
// right quarter and repeats the previous level on the diagonal.
inline FlagCode code_checkerboard(const std::vector<MrdCode>& codes) {
    require(!codes.empty(), Errc::ParameterMismatch, "need at least one matrix code");
    const auto& field = codes[0].field();
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const std::size_t side = static_cast<std::size_t>(1) << i;
        require_same_field(*codes[i].field(), *field);
        require(codes[i].rows() == side && codes[i].cols() == side && codes[i].dim() == side &&
                    codes[i].designed_distance() == side,
                Errc::ParameterMismatch,
                "level " + std::to_string(i) + " code must have side = dim = distance = 2^i");
    }
    const std::size_t t = codes.size() - 1;
    const std::size_t n = static_cast<std::size_t>(1) << (t + 1);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        count *= field->q();
        require(count <= FlagCode::kMaxCodewords, Errc::TooLarge,
                "codebook too large to enumerate");
    }

    std::vector<FieldMatrix> level;
    for (const auto& x : codes[0].codewords()) {
        auto u = FieldMatrix::identity(field, 2);
        u.at(0, 1) = x.at(0, 0);
        level.push_back(std::move(u));
    }
    for (std::size_t i = 1; i <= t; ++i) {
        const std::size_t side = static_cast<std::size_t>(1) << i;
        std::vector<FieldMatrix> next;
        next.reserve(level.size() * codes[i].codewords().size());
        for (const auto& prev : level)
            for (const auto& x : codes[i].codewords()) {
                FieldMatrix u(field, 2 * side, 2 * side);
                u.set_block(0, 0, prev);
                u.set_block(side, side, prev);
                u.set_block(0, side, x);
                next.push_back(std::move(u));
            }
        level = std::move(next);
    }
    return FlagCode(field, FlagType::full(n), "checkerboard", n - 1,
                    static_cast<std::size_t>(1) << t, std::move(level));
}

// Full-type code generated by the upper unitriangular matrices whose
// first k diagonals above the main one vanish.
inline FlagCode code_derived(std::size_t n, std::size_t k, std::uint64_t q) {
    require(n >= 2, Errc::ParameterOutOfRange, "ambient dimension must be at least 2");
    require(k <= n - 1, Errc::ParameterOutOfRange, "band width must be at most n-1");
    auto field = Field::of_order(q);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + k + 1; j < n; ++j) cells.emplace_back(i, j);
    const std::size_t dim = cells.size();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        count *= q;
        require(count <= FlagCode::kMaxCodewords, Errc::TooLarge,
                "codebook too large to enumerate");
    }
    std::vector<FieldMatrix> gens;
    gens.reserve(static_cast<std::size_t>(count));
    std::vector<std::uint32_t> digits(dim, 0);
    for (std::uint64_t it = 0; it < count; ++it) {
        auto g = FieldMatrix::identity(field, n);
        for (std::size_t i = 0; i < dim; ++i) g.at(cells[i].first, cells[i].second) = digits[i];
        gens.push_back(std::move(g));
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < q) break;
            digits[i] = 0;
        }
    }
    return FlagCode(field, FlagType::full(n), "derived", dim, k + 1, std::move(gens));
}

enum class DistanceMode { pairwise, group };

// Minimum distance of the codebook. Pairwise mode scans flag pairs with
// grassmann_distance. Group mode works on the generator matrices: they
// must lie in the block-unitriangular pattern of the type; a closed set
// is scanned over its non-identity elements, otherwise over the pair
// quotients g h^{-1}, which the pattern group always contains.
inline std::size_t code_min_distance(const FlagCode& code, DistanceMode mode) {
    require(code.size() >= 2, Errc::EmptyDistance,
            "minimum distance needs at least two codewords");
    if (mode == DistanceMode::pairwise) {
        std::size_t best = static_cast<std::size_t>(-1);
        const auto& flags = code.codebook();
        for (std::size_t i = 0; i < flags.size(); ++i)
            for (std::size_t j = i + 1; j < flags.size(); ++j) {
                const std::size_t d = grassmann_distance(flags[i], flags[j]);
                if (d < best) best = d;
            }
        return best;
    }

    const auto& gens = code.generators();
    for (const auto& g : gens)
        require(in_block_pattern(g, code.type()), Errc::NotAGroup,
                "generator outside the block-unitriangular pattern");

    std::set<FieldMatrix> members(gens.begin(), gens.end());
    std::vector<FieldMatrix> inverses;
    inverses.reserve(gens.size());
    for (const auto& g : gens) inverses.push_back(inverse(g));
    bool closed = true;
    for (const auto& g : inverses)
        if (!members.count(g)) {
            closed = false;
            break;
        }
    if (closed) {
        for (const auto& a : gens) {
            for (const auto& b : gens)
                if (!members.count(a * b)) {
                    closed = false;
                    break;
                }
            if (!closed) break;
        }
    }

    std::size_t best = static_cast<std::size_t>(-1);
    if (closed) {
        const auto id = FieldMatrix::identity(code.field(), code.type().ambient());
        for (const auto& g : gens) {
            if (g == id) continue;
            const std::size_t d = ebar(g, code.type());
            if (d < best) best = d;
        }
        require(best != static_cast<std::size_t>(-1), Errc::EmptyDistance,
                "no non-identity group elements");
    } else {
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j) {
                const std::size_t d = ebar(gens[i] * inverses[j], code.type());
                if (d < best) best = d;
            }
    }
    return best;
}

inline void write_flag_code(std::ostream& os, const FlagCode& code) {
    os << "flagcode v1 q=" << code.field()->q() << " n=" << code.type().ambient() << " T=";
    const auto& dims = code.type().dims();
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) os << ',';
        os << dims[i];
    }
    os << " construction=" << code.construction() << " dim=" << code.dim() << '\n';
    for (const auto& g : code.generators()) {
        write_matrix(os, g);
        os << '\n';
    }
}

inline FlagCode read_flag_code(std::istream& is, FieldPtr field = nullptr) {
    std::string magic, version;
    if (!(is >> magic >> version) || magic != "flagcode" || version != "v1")
        fail(Errc::ParseError, "expected a flagcode v1 header");
    std::uint64_t q = 0;
    std::size_t n = 0, dim = 0;
    std::vector<std::size_t> dims;
    std::string construction;
    bool have_q = false, have_n = false, have_t = false, have_c = false, have_dim = false;
    for (int i = 0; i < 5; ++i) {
        std::string tok;
        if (!(is >> tok)) fail(Errc::ParseError, "truncated flagcode header");
        const auto eq = tok.find('=');
        if (eq == std::string::npos) fail(Errc::ParseError, "malformed header field");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        try {
            if (key == "q") {
                q = std::stoull(val);
                have_q = true;
            } else if (key == "n") {
                n = std::stoul(val);
                have_n = true;
            } else if (key == "T") {
                std::istringstream list(val);
                std::string item;
                while (std::getline(list, item, ',')) dims.push_back(std::stoul(item));
                have_t = true;
            } else if (key == "construction") {
                construction = val;
                have_c = true;
            } else if (key == "dim") {
                dim = std::stoul(val);
                have_dim = true;
            } else {
                fail(Errc::ParseError, "unknown header field " + key);
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad numeric value in header");
        }
    }
    if (!(have_q && have_n && have_t && have_c && have_dim))
        fail(Errc::ParseError, "incomplete flagcode header");
    if (dims.empty()) fail(Errc::ParseError, "empty T= list");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1 || dims[i] > n - 1 || (i > 0 && dims[i - 1] >= dims[i]))
            fail(Errc::ParseError, "bad T= list");
    }
    auto fld = detail::field_for_header(detail::FlagHeader{n, q, dims}, std::move(field));

    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        count *= q;
        require(count <= FlagCode::kMaxCodewords, Errc::TooLarge,
                "codebook too large to enumerate");
    }
    std::vector<FieldMatrix> gens;
    gens.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        auto g = read_matrix(is, fld);
        if (g.rows() != n || g.cols() != n) fail(Errc::ParseError, "generator shape mismatch");
        gens.push_back(std::move(g));
    }
    return FlagCode(fld, FlagType(n, dims), construction, dim, std::nullopt, std::move(gens));
}

inline std::string flag_code_to_string(const FlagCode& code) {
    std::ostringstream os;
    write_flag_code(os, code);
    return os.str();
}

inline FlagCode flag_code_from_string(const std::string& s, FieldPtr field = nullptr) {
    std::istringstream is(s);
    return read_flag_code(is, std::move(field));
}

}  // namespace flagcodes
