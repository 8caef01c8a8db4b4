#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace flagcodes {

// A permutation of {1..n} in one-line notation. Images are stored 0-based;
// the text form "n: p1 p2 ... pn" is 1-based.
class Permutation {
  public:
    Permutation() = default;

    // images[i] = pi(i), 0-based
    explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (auto v : images_) {
            require(v < images_.size() && !seen[v], Errc::ParameterOutOfRange,
                    "images do not form a permutation");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::uint32_t> im(n);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    // i |-> n+1-i, the longest element
    static Permutation longest(std::size_t n) {
        std::vector<std::uint32_t> im(n);
        for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<std::uint32_t>(n - 1 - i);
        return Permutation(std::move(im));
    }

    static Permutation transposition(std::size_t n, std::size_t a, std::size_t b) {
        auto p = identity(n);
        std::swap(p.images_[a], p.images_[b]);
        return p;
    }

    static Permutation from_one_line(const std::vector<std::uint32_t>& one_based) {
        std::vector<std::uint32_t> im(one_based.size());
        for (std::size_t i = 0; i < one_based.size(); ++i) {
            require(one_based[i] >= 1 && one_based[i] <= one_based.size(), Errc::ParseError,
                    "one-line entries must lie in 1..n");
            im[i] = one_based[i] - 1;
        }
        try {
            return Permutation(std::move(im));
        } catch (const Error&) {
            fail(Errc::ParseError, "entries do not form a permutation");
        }
    }

    std::size_t degree() const { return images_.size(); }
    std::uint32_t operator()(std::size_t i) const { return images_[i]; }
    const std::vector<std::uint32_t>& images() const { return images_; }

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator!=(const Permutation& o) const { return images_ != o.images_; }
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<std::uint32_t> im(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<std::uint32_t>(i);
        Permutation p;
        p.images_ = std::move(im);
        return p;
    }

    // Inversion count; the minimal number of adjacent transpositions.
    std::size_t length() const {
        std::size_t inv = 0;
        for (std::size_t i = 0; i < images_.size(); ++i)
            for (std::size_t k = 0; k < i; ++k)
                if (images_[k] > images_[i]) ++inv;
        return inv;
    }

    // depth(pi) = sum over i=1..n-1 of #{k <= i : pi(k) > i}. The excedance
    // form sum_{pi(k)>k} (pi(k)-k) is computed alongside; the two always
    // agree and disagreement means a broken implementation.
    std::size_t depth() const {
        const std::size_t n = images_.size();
        std::size_t by_def = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)  // 1-based threshold i+1
            for (std::size_t k = 0; k <= i; ++k)
                if (images_[k] > i) ++by_def;
        std::size_t by_excedance = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (images_[k] > k) by_excedance += images_[k] - k;
        require(by_def == by_excedance, Errc::Internal, "depth formulas disagree");
        return by_def;
    }

    // n minus the number of cycles: the minimal number of (arbitrary)
    // transpositions expressing pi.
    std::size_t transposition_length() const {
        std::vector<bool> seen(images_.size(), false);
        std::size_t cycles = 0;
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i]) continue;
            ++cycles;
            for (std::size_t j = i; !seen[j]; j = images_[j]) seen[j] = true;
        }
        return images_.size() - cycles;
    }

    // sum_k |pi(k) - k| = 2 * depth(pi)
    std::size_t sum_of_distances() const {
        std::size_t s = 0;
        for (std::size_t k = 0; k < images_.size(); ++k)
            s += images_[k] > k ? images_[k] - k : k - images_[k];
        return s;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << images_.size() << ':';
        for (auto v : images_) os << ' ' << v + 1;
        return os.str();
    }

  private:
    std::vector<std::uint32_t> images_;
};

// compose(a, b) applies b first: compose(a, b)(x) = a(b(x)). Texts that
// multiply permutations left to right ("pi sigma" meaning pi first) write
// our compose(sigma, pi) as "pi sigma".
inline Permutation compose(const Permutation& a, const Permutation& b) {
    require(a.degree() == b.degree(), Errc::DegreeMismatch, "composing permutations of different degree");
    std::vector<std::uint32_t> im(a.degree());
    for (std::size_t x = 0; x < a.degree(); ++x) im[x] = a(b(x));
    return Permutation(std::move(im));
}

inline Permutation parse_permutation(const std::string& text) {
    std::string s = text;
    const auto colon = s.find(':');
    std::size_t n = 0;
    if (colon != std::string::npos) {
        std::istringstream head(s.substr(0, colon));
        if (!(head >> n)) fail(Errc::ParseError, "bad permutation degree");
        std::string tail;
        if (head >> tail) fail(Errc::ParseError, "bad permutation header");
        s = s.substr(colon + 1);
    }
    std::istringstream is(s);
    std::vector<std::uint32_t> one_based;
    std::uint64_t v = 0;
    while (is >> v) one_based.push_back(static_cast<std::uint32_t>(v));
    if (!is.eof()) fail(Errc::ParseError, "bad permutation entry");
    if (colon != std::string::npos && one_based.size() != n)
        fail(Errc::ParseError, "entry count does not match declared degree");
    if (one_based.empty()) fail(Errc::ParseError, "empty permutation");
    return Permutation::from_one_line(one_based);
}

// All permutations of degree n in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
    require(n <= 9, Errc::DegreeTooLarge, "exhaustive enumeration capped at degree 9");
    std::vector<std::uint32_t> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

// T(n, k): how many permutations of degree n have depth k.
inline std::map<std::size_t, std::uint64_t> depth_histogram(std::size_t n) {
    require(n >= 1 && n <= 9, Errc::DegreeTooLarge, "histogram capped at degree 9");
    std::map<std::size_t, std::uint64_t> hist;
    for (const auto& p : all_permutations(n)) ++hist[p.depth()];
    return hist;
}

// A composition of n: ordered positive parts. Used as the shape of a Young
// subgroup (the stabilizer of the consecutive blocks).
class Composition {
  public:
    explicit Composition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
        require(!parts_.empty(), Errc::ParameterOutOfRange, "composition needs at least one part");
        for (auto k : parts_)
            require(k >= 1, Errc::ParameterOutOfRange, "composition parts must be positive");
    }

    const std::vector<std::uint32_t>& parts() const { return parts_; }

    std::size_t total() const {
        std::size_t s = 0;
        for (auto k : parts_) s += k;
        return s;
    }

    // Half-open 0-based block ranges [start, end).
    std::vector<std::pair<std::size_t, std::size_t>> blocks() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        std::size_t start = 0;
        for (auto k : parts_) {
            out.emplace_back(start, start + k);
            start += k;
        }
        return out;
    }

  private:
    std::vector<std::uint32_t> parts_;
};

// Does pi lie in the Young subgroup Y_{T'}, i.e. map every block to itself?
inline bool young_contains(const Composition& shape, const Permutation& pi) {
    require(shape.total() == pi.degree(), Errc::DegreeMismatch,
            "composition total does not match permutation degree");
    for (auto [lo, hi] : shape.blocks())
        for (std::size_t i = lo; i < hi; ++i)
            if (pi(i) < lo || pi(i) >= hi) return false;
    return true;
}

// All elements of the Young subgroup Y_{T'}.
inline std::vector<Permutation> young_subgroup(const Composition& shape) {
    std::vector<Permutation> out{Permutation::identity(shape.total())};
    for (auto [lo, hi] : shape.blocks()) {
        std::vector<std::uint32_t> block(hi - lo);
        std::iota(block.begin(), block.end(), static_cast<std::uint32_t>(lo));
        std::vector<std::vector<std::uint32_t>> arrangements;
        do {
            arrangements.push_back(block);
        } while (std::next_permutation(block.begin(), block.end()));

        std::vector<Permutation> next;
        next.reserve(out.size() * arrangements.size());
        for (const auto& base : out)
            for (const auto& arr : arrangements) {
                auto im = base.images();
                for (std::size_t i = lo; i < hi; ++i) im[i] = arr[i - lo];
                next.push_back(Permutation(std::move(im)));
            }
        out = std::move(next);
    }
    return out;
}

// The unique minimal-length element of the double coset Y_{T'} pi Y_{T'},
// found by enumerating the coset. Desk-scale only.
inline Permutation min_double_coset_rep(const Permutation& pi, const Composition& shape) {
    require(pi.degree() <= 8, Errc::DegreeTooLarge, "double-coset search capped at degree 8");
    require(shape.total() == pi.degree(), Errc::DegreeMismatch,
            "composition total does not match permutation degree");
    const auto young = young_subgroup(shape);
    bool have = false;
    std::vector<Permutation> best;
    std::size_t best_len = 0;
    for (const auto& y1 : young) {
        const auto left = compose(pi, y1);  // y1 first, then pi
        for (const auto& y2 : young) {
            auto w = compose(y2, left);
            const auto len = w.length();
            if (!have || len < best_len) {
                have = true;
                best.assign(1, std::move(w));
                best_len = len;
            } else if (len == best_len && w != best.front()) {
                best.push_back(std::move(w));
            }
        }
    }
    // minimal-length double coset representatives are unique; seeing two is
    // a broken invariant, not a caller error
    for (const auto& w : best)
        require(w == best.front(), Errc::Internal,
                "double coset has two distinct minimal-length elements");
    return best.front();
}

}  // namespace flagcodes
