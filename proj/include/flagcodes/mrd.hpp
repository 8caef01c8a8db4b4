#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"

namespace flagcodes {

// A linear rank-metric code: a subspace of k x l matrices over GF(q) held
// by a generator basis. Codewords are enumerated on demand.
class MrdCode {
  public:
    MrdCode(FieldPtr field, std::size_t rows, std::size_t cols, std::size_t designed_distance,
            std::string construction, std::vector<FieldMatrix> generators)
        : field_(std::move(field)),
          rows_(rows),
          cols_(cols),
          designed_distance_(designed_distance),
          construction_(std::move(construction)),
          generators_(std::move(generators)) {
        for (const auto& g : generators_) {
            require(g.rows() == rows_ && g.cols() == cols_, Errc::ShapeMismatch,
                    "generator shape mismatch");
            require_same_field(g.field(), *field_);
        }
    }

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t dim() const { return generators_.size(); }
    std::size_t designed_distance() const { return designed_distance_; }
    const std::string& construction() const { return construction_; }
    const std::vector<FieldMatrix>& generators() const { return generators_; }

    std::uint64_t size() const {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dim(); ++i) {
            count *= field_->q();
            require(count <= kMaxCodewords, Errc::TooLarge, "codeword set too large to enumerate");
        }
        return count;
    }

    // All q^dim codewords, zero first, in odometer order over the
    // generator coefficients.
    std::vector<FieldMatrix> codewords() const {
        const std::uint64_t count = size();
        std::vector<FieldMatrix> words;
        words.reserve(static_cast<std::size_t>(count));
        std::vector<std::uint32_t> coeff(dim(), 0);
        for (std::uint64_t it = 0; it < count; ++it) {
            FieldMatrix w(field_, rows_, cols_);
            for (std::size_t i = 0; i < dim(); ++i)
                if (coeff[i]) w = w + generators_[i].scaled(coeff[i]);
            words.push_back(std::move(w));
            for (std::size_t i = 0; i < coeff.size(); ++i) {
                if (++coeff[i] < field_->q()) break;
                coeff[i] = 0;
            }
        }
        return words;
    }

    // Minimum rank over nonzero codewords, by exhaustive scan.
    std::size_t min_rank() const {
        require(dim() >= 1, Errc::EmptyDistance, "code has no nonzero codewords");
        std::size_t best = rows_ < cols_ ? rows_ : cols_;
        bool seen = false;
        for (const auto& w : codewords()) {
            if (w.is_zero()) continue;
            seen = true;
            const std::size_t r = rank(w);
            if (r < best) best = r;
        }
        require(seen, Errc::EmptyDistance, "code has no nonzero codewords");
        return best;
    }

    static constexpr std::uint64_t kMaxCodewords = 1ull << 14;

  private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::size_t designed_distance_;
    std::string construction_;
    std::vector<FieldMatrix> generators_;
};

// The regular-representation code {matrix of left multiplication by alpha
// on GF(q^k) : alpha in GF(q^k)}, written over GF(q). Square, with
// dimension, distance, and side all equal to k.
inline MrdCode mrd_field_rep(std::uint64_t q, std::size_t k) {
    require(k >= 1, Errc::ParameterOutOfRange, "extension degree must be at least 1");
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < k; ++i) {
        order *= q;
        require(order <= Field::kMaxOrder, Errc::TooLarge, "q^k exceeds the field table bound");
    }
    auto base = Field::of_order(q);
    auto ext = Field::extension(base, k);
    std::vector<FieldMatrix> gens;
    gens.reserve(k);
    for (auto b : polynomial_basis(*ext)) gens.push_back(regular_representation(ext, b));
    return MrdCode(base, k, k, k, "field-representation", std::move(gens));
}

// Evaluation code of the linearized polynomials a_0 z + a_1 z^q + ... +
// a_{kappa-1} z^{q^{kappa-1}} over GF(q^m) at the first nprime polynomial
// basis elements. Codeword columns are the coordinate vectors of the
// values; designed rank distance is nprime - kappa + 1.
inline MrdCode mrd_gabidulin(std::uint64_t q, std::size_t m, std::size_t nprime,
                             std::size_t kappa) {
    require(kappa >= 1 && kappa <= nprime && nprime <= m, Errc::ParameterOutOfRange,
            "need 1 <= kappa <= nprime <= m");
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < m; ++i) {
        order *= q;
        require(order <= Field::kMaxOrder, Errc::ParameterOutOfRange,
                "q^m exceeds the field table bound");
    }
    auto base = Field::of_order(q);
    auto ext = Field::extension(base, m);
    const auto points = polynomial_basis(*ext);

    auto evaluate = [&](std::size_t term, std::uint32_t a) {
        // matrix of the single-term message a z^{q^term}
        FieldMatrix w(base, m, nprime);
        std::uint64_t e = 1;
        for (std::size_t i = 0; i < term; ++i) e *= q;
        for (std::size_t j = 0; j < nprime; ++j) {
            const std::uint32_t val = ext->mul(a, ext->pow(points[j], e));
            const auto digits = ext->to_base_digits(val);
            for (std::size_t s = 0; s < m; ++s) w.at(s, j) = digits[s];
        }
        return w;
    };

    std::vector<FieldMatrix> gens;
    gens.reserve(m * kappa);
    for (std::size_t term = 0; term < kappa; ++term)
        for (auto b : points) gens.push_back(evaluate(term, b));
    return MrdCode(base, m, nprime, nprime - kappa + 1, "gabidulin", std::move(gens));
}

// Widens codewords with zero columns on the right; ranks are unchanged.
inline MrdCode mrd_pad_columns(const MrdCode& code, std::size_t cols) {
    require(cols >= code.cols(), Errc::ParameterOutOfRange,
            "padded width below the current width");
    std::vector<FieldMatrix> gens;
    gens.reserve(code.dim());
    for (const auto& g : code.generators()) {
        FieldMatrix w(code.field(), code.rows(), cols);
        w.set_block(0, 0, g);
        gens.push_back(std::move(w));
    }
    return MrdCode(code.field(), code.rows(), cols, code.designed_distance(),
                   code.construction() + "-padded", std::move(gens));
}

}  // namespace flagcodes
