#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace flagcodes {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// A finite field, either GF(p) or an extension of another Field by an
// irreducible monic modulus. Elements are integer encodings in [0, q):
// an extension element sum d_i t^i is encoded as sum enc(d_i) * q_base^i,
// so for a prime-base extension this is the little-endian base-p digit
// encoding of the coefficient vector. Arithmetic is table-driven; tables
// are built once at construction, which caps q at a desk-scale bound.
//
// Extensions over non-prime bases are supported because the regular
// representation of GF(q^k) over GF(q) needs GF(q) itself to be the
// coefficient field of the polynomial basis.
class Field : public std::enable_shared_from_this<Field> {
  public:
    static constexpr std::uint64_t kMaxOrder = 4096;

    static FieldPtr prime(std::uint64_t p);

    // Degree-e extension of `base`. The modulus, when given, lists the
    // little-endian coefficients as base-field encodings and must be monic
    // of degree e (length e+1). When absent, the irreducible monic with the
    // smallest integer encoding of its non-leading coefficient vector is
    // selected by scanning upward.
    static FieldPtr extension(FieldPtr base, std::uint32_t e,
                              std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    // GF(p^e) over the prime field, the common case.
    static FieldPtr make(std::uint64_t p, std::uint32_t e,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    // GF(q) for a prime power q, with the default modulus.
    static FieldPtr of_order(std::uint64_t q);

    std::uint64_t q() const { return q_; }
    std::uint64_t characteristic() const { return p_; }
    std::uint32_t degree_over_base() const { return ext_degree_; }
    std::uint32_t degree() const { return total_degree_; }
    const FieldPtr& base() const { return base_; }
    bool is_prime_field() const { return base_ == nullptr; }
    // Modulus coefficients (little-endian, base-field encodings, monic);
    // empty for a prime field.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool equals(const Field& other) const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[idx(a, b)]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[idx(a, b)]; }
    std::uint32_t neg(std::uint32_t a) const { return neg_[check(a)]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t inv(std::uint32_t a) const {
        require(check(a) != 0, Errc::DivisionByZero, "inverse of zero");
        return inv_[a];
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1, x = check(a);
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    // Coefficients of the element in the polynomial basis over the base
    // field (little-endian, length = degree_over_base; length 1 for a prime
    // field).
    std::vector<std::uint32_t> to_base_digits(std::uint32_t a) const;
    std::uint32_t from_base_digits(const std::vector<std::uint32_t>& digits) const;

    std::string describe() const;

  private:
    Field() = default;

    std::size_t idx(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::size_t>(check(a)) * q_ + check(b);
    }

    std::uint32_t check(std::uint32_t a) const {
        require(a < q_, Errc::ParameterOutOfRange,
                "element encoding " + std::to_string(a) + " out of range for field of order " +
                    std::to_string(q_));
        return a;
    }

    void build_prime_tables();
    void build_extension_tables();

    // Polynomial helpers over the base field (little-endian coefficient
    // vectors, trailing zeros allowed).
    static std::vector<std::uint32_t> poly_mul(const Field& f, const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> poly_mod(const Field& f, std::vector<std::uint32_t> a,
                                               const std::vector<std::uint32_t>& m);
    static bool poly_is_irreducible(const Field& f, const std::vector<std::uint32_t>& m);

    std::uint64_t p_ = 0;
    std::uint64_t q_ = 0;
    std::uint32_t ext_degree_ = 1;
    std::uint32_t total_degree_ = 1;
    FieldPtr base_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline FieldPtr Field::prime(std::uint64_t p) {
    require(is_prime(p), Errc::NonPrimeCharacteristic,
            "characteristic " + std::to_string(p) + " is not prime");
    require(p <= kMaxOrder, Errc::DegreeTooLarge, "field order exceeds the supported bound");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->q_ = p;
    f->build_prime_tables();
    return f;
}

inline void Field::build_prime_tables() {
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a) {
        neg_[a] = static_cast<std::uint32_t>((q_ - a) % q_);
        for (std::uint64_t b = 0; b < q_; ++b) {
            add_[a * q_ + b] = static_cast<std::uint32_t>((a + b) % q_);
            mul_[a * q_ + b] = static_cast<std::uint32_t>((a * b) % q_);
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint32_t>(b);
        }
    }
}

inline std::vector<std::uint32_t> Field::poly_mul(const Field& f,
                                                  const std::vector<std::uint32_t>& a,
                                                  const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    return out;
}

inline std::vector<std::uint32_t> Field::poly_mod(const Field& f, std::vector<std::uint32_t> a,
                                                  const std::vector<std::uint32_t>& m) {
    auto deg = [](const std::vector<std::uint32_t>& p) -> int {
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    const int dm = deg(m);
    int da = deg(a);
    while (da >= dm && dm >= 0) {
        // m is monic, so the quotient coefficient is just the leading
        // coefficient of a.
        const std::uint32_t c = a[da];
        const int shift = da - dm;
        for (int i = 0; i <= dm; ++i)
            a[i + shift] = f.sub(a[i + shift], f.mul(c, m[i]));
        da = deg(a);
    }
    a.resize(static_cast<std::size_t>(da + 1));
    return a;
}

inline bool Field::poly_is_irreducible(const Field& f, const std::vector<std::uint32_t>& m) {
    const std::uint32_t e = static_cast<std::uint32_t>(m.size()) - 1;
    if (e == 0) return false;
    if (e == 1) return true;
    // Trial division by every monic polynomial of degree 1..e/2.
    for (std::uint32_t d = 1; 2 * d <= e; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) {
            count *= f.q();
            require(count <= 1u << 20, Errc::DegreeTooLarge,
                    "irreducibility scan too large for degree " + std::to_string(e));
        }
        for (std::uint64_t enc = 0; enc < count; ++enc) {
            std::vector<std::uint32_t> divisor(d + 1, 0);
            std::uint64_t rest = enc;
            for (std::uint32_t i = 0; i < d; ++i) {
                divisor[i] = static_cast<std::uint32_t>(rest % f.q());
                rest /= f.q();
            }
            divisor[d] = 1;
            if (poly_mod(f, m, divisor).empty()) return false;
        }
    }
    return true;
}

inline FieldPtr Field::extension(FieldPtr base, std::uint32_t e,
                                 std::optional<std::vector<std::uint32_t>> modulus) {
    require(base != nullptr, Errc::ParameterOutOfRange, "extension needs a base field");
    require(e >= 1, Errc::ParameterOutOfRange, "extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= base->q();
        require(q <= kMaxOrder, Errc::DegreeTooLarge, "field order exceeds the supported bound");
    }

    std::vector<std::uint32_t> m;
    if (modulus) {
        m = *modulus;
        require(m.size() == static_cast<std::size_t>(e) + 1, Errc::DegreeMismatch,
                "modulus must have degree " + std::to_string(e));
        require(m.back() == 1, Errc::DegreeMismatch, "modulus must be monic");
        for (auto c : m)
            require(c < base->q(), Errc::ParameterOutOfRange, "modulus coefficient out of range");
        require(poly_is_irreducible(*base, m), Errc::ReducibleModulus,
                "modulus is reducible over the base field");
    } else {
        // Scan non-leading coefficient vectors by ascending integer
        // encoding; the first irreducible wins. This reproduces the
        // textbook choices x^2+x+1 for GF(4), x^3+x+1 for GF(8),
        // x^2+1 for GF(9), x^4+x+1 for GF(16).
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < e; ++i) count *= base->q();
        bool found = false;
        for (std::uint64_t enc = 0; enc < count && !found; ++enc) {
            m.assign(e + 1, 0);
            std::uint64_t rest = enc;
            for (std::uint32_t i = 0; i < e; ++i) {
                m[i] = static_cast<std::uint32_t>(rest % base->q());
                rest /= base->q();
            }
            m[e] = 1;
            found = poly_is_irreducible(*base, m);
        }
        require(found, Errc::Internal, "no irreducible modulus found");
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->characteristic();
    f->q_ = q;
    f->ext_degree_ = e;
    f->total_degree_ = e * base->degree();
    f->base_ = std::move(base);
    f->modulus_ = std::move(m);
    f->build_extension_tables();
    return f;
}

inline void Field::build_extension_tables() {
    const Field& b = *base_;
    const std::uint64_t qb = b.q();
    const std::uint32_t e = ext_degree_;

    auto decompose = [&](std::uint32_t a) {
        std::vector<std::uint32_t> d(e);
        for (std::uint32_t i = 0; i < e; ++i) {
            d[i] = static_cast<std::uint32_t>(a % qb);
            a = static_cast<std::uint32_t>(a / qb);
        }
        return d;
    };
    auto compose = [&](const std::vector<std::uint32_t>& d) {
        std::uint64_t a = 0;
        for (std::uint32_t i = e; i-- > 0;) a = a * qb + d[i];
        return static_cast<std::uint32_t>(a);
    };

    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a) {
        auto da = decompose(static_cast<std::uint32_t>(a));
        std::vector<std::uint32_t> dn(e);
        for (std::uint32_t i = 0; i < e; ++i) dn[i] = b.neg(da[i]);
        neg_[a] = compose(dn);
        for (std::uint64_t c = 0; c < q_; ++c) {
            auto dc = decompose(static_cast<std::uint32_t>(c));
            std::vector<std::uint32_t> ds(e);
            for (std::uint32_t i = 0; i < e; ++i) ds[i] = b.add(da[i], dc[i]);
            add_[a * q_ + c] = compose(ds);
            auto prod = poly_mod(b, poly_mul(b, da, dc), modulus_);
            prod.resize(e, 0);
            mul_[a * q_ + c] = compose(prod);
        }
    }
    for (std::uint64_t a = 1; a < q_; ++a)
        for (std::uint64_t c = 1; c < q_; ++c)
            if (mul_[a * q_ + c] == 1) {
                inv_[a] = static_cast<std::uint32_t>(c);
                break;
            }
}

inline FieldPtr Field::make(std::uint64_t p, std::uint32_t e,
                            std::optional<std::vector<std::uint32_t>> modulus) {
    auto pf = prime(p);
    if (e == 1) {
        require(!modulus || modulus->size() == 2, Errc::DegreeMismatch,
                "modulus must have degree 1");
        return pf;
    }
    return extension(std::move(pf), e, std::move(modulus));
}

inline FieldPtr Field::of_order(std::uint64_t q) {
    require(q >= 2, Errc::ParameterOutOfRange, "field order must be at least 2");
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    std::uint32_t e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    require(rest == 1, Errc::ParameterOutOfRange, std::to_string(q) + " is not a prime power");
    return make(p, e);
}

inline bool Field::equals(const Field& other) const {
    if (this == &other) return true;
    if (q_ != other.q_ || p_ != other.p_ || ext_degree_ != other.ext_degree_) return false;
    if (modulus_ != other.modulus_) return false;
    if (is_prime_field() != other.is_prime_field()) return false;
    return is_prime_field() || base_->equals(*other.base_);
}

inline std::vector<std::uint32_t> Field::to_base_digits(std::uint32_t a) const {
    check(a);
    if (is_prime_field()) return {a};
    std::vector<std::uint32_t> d(ext_degree_);
    const std::uint64_t qb = base_->q();
    for (std::uint32_t i = 0; i < ext_degree_; ++i) {
        d[i] = static_cast<std::uint32_t>(a % qb);
        a = static_cast<std::uint32_t>(a / qb);
    }
    return d;
}

inline std::uint32_t Field::from_base_digits(const std::vector<std::uint32_t>& digits) const {
    const std::uint32_t e = is_prime_field() ? 1 : ext_degree_;
    require(digits.size() == e, Errc::DegreeMismatch, "wrong digit count");
    if (is_prime_field()) {
        check(digits[0]);
        return digits[0];
    }
    std::uint64_t a = 0;
    const std::uint64_t qb = base_->q();
    for (std::uint32_t i = e; i-- > 0;) {
        require(digits[i] < qb, Errc::ParameterOutOfRange, "digit out of range");
        a = a * qb + digits[i];
    }
    return static_cast<std::uint32_t>(a);
}

inline std::string Field::describe() const {
    if (is_prime_field()) return "GF(" + std::to_string(q_) + ")";
    return "GF(" + std::to_string(q_) + ")/GF(" + std::to_string(base_->q()) + ")";
}

inline void require_same_field(const Field& a, const Field& b) {
    require(a.equals(b), Errc::FieldMismatch, "operands belong to different fields");
}

}  // namespace flagcodes
